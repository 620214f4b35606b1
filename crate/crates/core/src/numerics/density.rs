use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result, StateInvariant};

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// A quantum state on `parties` subsystems of local dimension `dim`.
///
/// Row index = ket digits of parties 1..r, column index = bra digits, party 1
/// most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dim: usize,
    parties: usize,
}

pub(crate) fn side_length(dim: usize, parties: usize) -> Result<usize> {
    u32::try_from(parties)
        .ok()
        .and_then(|p| dim.checked_pow(p))
        .ok_or(Error::Overflow("d^r"))
}

impl DensityMatrix {
    /// Validates shape, hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix, dim: usize, parties: usize) -> Result<Self> {
        check_shape(&matrix, dim, parties)?;
        let herm = matrix.hermiticity_error();
        if herm > HERMITIAN_TOLERANCE {
            return Err(Error::InvalidState {
                invariant: StateInvariant::Hermitian,
                detail: format!("max |A - A†| = {herm:e}"),
            });
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOLERANCE {
            return Err(Error::InvalidState {
                invariant: StateInvariant::UnitTrace,
                detail: format!("trace = {tr}"),
            });
        }
        let min_eig = matrix.hermitian_eigenvalues()?[0];
        if min_eig < -PSD_TOLERANCE {
            return Err(Error::InvalidState {
                invariant: StateInvariant::PositiveSemidefinite,
                detail: format!("minimum eigenvalue {min_eig:e}"),
            });
        }
        Ok(DensityMatrix {
            matrix,
            dim,
            parties,
        })
    }

    /// Hermitian part rescaled to unit trace, then validated. Absorbs the
    /// roundoff of numerically constructed states.
    pub fn from_approximate(matrix: &ComplexMatrix, dim: usize, parties: usize) -> Result<Self> {
        check_shape(matrix, dim, parties)?;
        let herm = matrix.linear_combination(0.5, &matrix.adjoint(), 0.5)?;
        let tr = herm.trace().re;
        if !(tr.is_finite() && tr > 0.0) {
            return Err(Error::InvalidState {
                invariant: StateInvariant::UnitTrace,
                detail: format!("cannot normalize trace {tr}"),
            });
        }
        Self::new(herm.scale(1.0 / tr), dim, parties)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    /// Side length `d^r`.
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix.hermitian_eigenvalues().expect("square")[0]
    }
}

fn check_shape(matrix: &ComplexMatrix, dim: usize, parties: usize) -> Result<()> {
    let fail = |detail: String| {
        Err(Error::InvalidState {
            invariant: StateInvariant::Shape,
            detail,
        })
    };
    if dim < 2 || parties < 1 {
        return fail(format!(
            "need d >= 2 and r >= 1, got d = {dim}, r = {parties}"
        ));
    }
    let n = side_length(dim, parties)?;
    if matrix.rows() != n || matrix.cols() != n {
        return fail(format!(
            "{}x{} matrix does not match d^r = {dim}^{parties} = {n}",
            matrix.rows(),
            matrix.cols()
        ));
    }
    Ok(())
}

/// `I/n` on `parties` subsystems of dimension `dim`.
pub fn maximally_mixed(dim: usize, parties: usize) -> Result<DensityMatrix> {
    let n = side_length(dim, parties)?;
    DensityMatrix::new(
        ComplexMatrix::identity(n).scale(1.0 / n as f64),
        dim,
        parties,
    )
}

/// Product state with the party structures concatenated.
pub fn tensor_states(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    if a.dim != b.dim {
        return Err(Error::invalid(format!(
            "local dimensions differ ({} vs {})",
            a.dim, b.dim
        )));
    }
    DensityMatrix::from_approximate(&a.matrix.kron(&b.matrix), a.dim, a.parties + b.parties)
}

/// `(1-β)ρ + β·I/n`.
pub fn mix_with_noise(rho: &DensityMatrix, beta: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::invalid(format!(
            "noise weight {beta} outside [0, 1]"
        )));
    }
    let noise = maximally_mixed(rho.dim, rho.parties)?;
    let mixed = rho
        .matrix
        .linear_combination(1.0 - beta, &noise.matrix, beta)?;
    DensityMatrix::new(mixed, rho.dim, rho.parties)
}
