//! Seeded random states: Haar unitaries from a Ginibre QR with phase
//! correction, simplex weights from normalized exponentials.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use super::density::{side_length, DensityMatrix};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `rows × cols` matrix of i.i.d. standard complex normals.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g: DMatrix<Complex64> = ginibre(n, n, rng).to_nalgebra();
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_nalgebra(&q)
}

/// Uniform point on the probability simplex with `n` vertices.
pub fn simplex_weights<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// `U·diag(λ)·U†` with Haar `U` and simplex-uniform `λ`.
pub fn random_density<R: Rng + ?Sized>(
    dim: usize,
    parties: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let n = side_length(dim, parties)?;
    random_density_of_rank(dim, parties, n, rng)
}

/// Like [`random_density`], but only the first `rank` columns of `U` carry
/// weight. Low-rank states are generically entangled across every cut,
/// which full-rank ones often are not.
pub fn random_density_of_rank<R: Rng + ?Sized>(
    dim: usize,
    parties: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let n = side_length(dim, parties)?;
    if n < 2 {
        return Err(Error::invalid("random states need dimension at least 2"));
    }
    if rank == 0 || rank > n {
        return Err(Error::invalid(format!(
            "rank must be in 1..={n}, got {rank}"
        )));
    }
    let u = haar_unitary(n, rng)
        .to_nalgebra()
        .columns(0, rank)
        .into_owned();
    let lambda = simplex_weights(rank, rng);
    let mut scaled = u.clone();
    for (j, &l) in lambda.iter().enumerate() {
        scaled.column_mut(j).scale_mut(l);
    }
    let rho = scaled * u.adjoint();
    DensityMatrix::from_approximate(&ComplexMatrix::from_nalgebra(&rho), dim, parties)
}

/// Normalized complex Gaussian vector in `C^dim`.
pub fn random_pure_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn kron_vectors(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// `Σ_i p_i |ψ_i⟩⟨ψ_i|` where each `ψ_i` is the product of its per-party
/// factors.
pub fn separable_mixture(
    weights: &[f64],
    factors: &[Vec<Vec<Complex64>>],
) -> Result<DensityMatrix> {
    if weights.is_empty() || weights.len() != factors.len() {
        return Err(Error::invalid("need one factor list per mixture weight"));
    }
    let parties = factors[0].len();
    let dim = factors[0].first().map_or(0, Vec::len);
    if parties == 0
        || factors
            .iter()
            .any(|term| term.len() != parties || term.iter().any(|f| f.len() != dim))
    {
        return Err(Error::invalid(
            "every term needs the same parties and local dimension",
        ));
    }
    let n = side_length(dim, parties)?;
    let mut rho = ComplexMatrix::zeros(n, n);
    for (&p, term) in weights.iter().zip(factors) {
        let psi = term[1..]
            .iter()
            .fold(term[0].clone(), |acc, f| kron_vectors(&acc, f));
        for i in 0..n {
            for j in 0..n {
                rho[(i, j)] += psi[i] * psi[j].conj() * p;
            }
        }
    }
    DensityMatrix::from_approximate(&rho, dim, parties)
}

/// Mixture of `terms` random pure product states with simplex weights.
pub fn random_separable<R: Rng + ?Sized>(
    dim: usize,
    parties: usize,
    terms: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    if terms == 0 {
        return Err(Error::invalid(
            "a separable mixture needs at least one term",
        ));
    }
    let weights = simplex_weights(terms, rng);
    let factors: Vec<Vec<Vec<Complex64>>> = (0..terms)
        .map(|_| (0..parties).map(|_| random_pure_vector(dim, rng)).collect())
        .collect();
    separable_mixture(&weights, &factors)
}
