use super::density::{side_length, DensityMatrix};
use super::matrix::ComplexMatrix;
use crate::criteria::check_party_order;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `B[i_1 … i_2r] = A[i_σ(1) … i_σ(2r)]` on a `d^r × d^r` operator.
///
/// Slot `2k-1` is party `k`'s row digit and slot `2k` its column digit. The
/// result is a pure rearrangement of `a`'s entries.
pub fn apply_criterion(
    a: &ComplexMatrix,
    dim: usize,
    sigma: &Permutation,
) -> Result<ComplexMatrix> {
    let parties = sigma.parties();
    let n = side_length(dim, parties)?;
    if a.rows() != n || a.cols() != n {
        return Err(Error::invalid(format!(
            "{}x{} matrix does not carry {parties} parties of dimension {dim}",
            a.rows(),
            a.cols()
        )));
    }
    let slots = 2 * parties;
    // flat row-major stride contributed by each slot's digit
    let mut stride = vec![0usize; slots];
    let mut weight = 1;
    for p in (0..parties).rev() {
        stride[2 * p] = weight * n;
        stride[2 * p + 1] = weight;
        weight *= dim;
    }
    let sigma_inv = sigma.inverse();
    let src_stride: Vec<usize> = sigma_inv.zero_based().iter().map(|&k| stride[k]).collect();

    let entries = a.as_slice();
    let mut out = Vec::with_capacity(n * n);
    let mut digits = vec![0usize; slots];
    // out_flat follows digit order: slot 0 most significant, so pushing in
    // odometer order yields row-major output.
    let mut out_order: Vec<usize> = (0..slots).collect();
    out_order.sort_by_key(|&s| std::cmp::Reverse(stride[s]));
    let mut src = 0usize;
    loop {
        out.push(entries[src]);
        // increment the least significant output digit
        let mut pos = slots;
        loop {
            if pos == 0 {
                return ComplexMatrix::from_row_major(n, n, out);
            }
            pos -= 1;
            let s = out_order[pos];
            digits[s] += 1;
            src += src_stride[s];
            if digits[s] < dim {
                break;
            }
            src -= dim * src_stride[s];
            digits[s] = 0;
        }
    }
}

impl DensityMatrix {
    /// `Λ_σ(ρ)`; generally not a state.
    pub fn apply(&self, sigma: &Permutation) -> Result<ComplexMatrix> {
        if sigma.parties() != self.parties() {
            return Err(Error::invalid(format!(
                "permutation acts on {} parties, state has {}",
                sigma.parties(),
                self.parties()
            )));
        }
        apply_criterion(self.matrix(), self.dim(), sigma)
    }
}

/// Slot permutation that relabels parties so that party `k` of the result is
/// party `order[k]` of the input (1-based).
pub fn party_permutation(order: &[usize]) -> Result<Permutation> {
    check_party_order(order, order.len())?;
    // B's party k reads A's party order[k]: A's slots of party order[k] take
    // B's slots of party k, so σ maps A-slot to B-slot.
    let parties = order.len();
    let mut images = vec![0; 2 * parties];
    for (k, &src) in order.iter().enumerate() {
        images[2 * (src - 1)] = 2 * k + 1;
        images[2 * (src - 1) + 1] = 2 * k + 2;
    }
    Permutation::from_images(&images)
}

pub fn reorder_parties(rho: &DensityMatrix, order: &[usize]) -> Result<DensityMatrix> {
    if order.len() != rho.parties() {
        return Err(Error::invalid(format!(
            "party order has {} entries, state has {} parties",
            order.len(),
            rho.parties()
        )));
    }
    let sigma = party_permutation(order)?;
    let moved = rho.apply(&sigma)?;
    DensityMatrix::new(moved, rho.dim(), rho.parties())
}
