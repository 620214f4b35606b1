#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;
use permcrit::{ComplexMatrix, Permutation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Trace norm from the Hermitian dilation `[[0, A], [A†, 0]]` (eigenvalues
/// `±s_i`) embedded as a real symmetric matrix (each eigenvalue doubled).
pub fn oracle_trace_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let h = |i: usize, j: usize| -> Complex64 {
        match (i < n, j < n) {
            (true, false) => a[(i, j - n)],
            (false, true) => a[(j, i - n)].conj(),
            _ => Complex64::new(0.0, 0.0),
        }
    };
    let m = 2 * n;
    let mut real = vec![vec![0.0; 2 * m]; 2 * m];
    for i in 0..m {
        for j in 0..m {
            let z = h(i, j);
            real[i][j] = z.re;
            real[i][j + m] = -z.im;
            real[i + m][j] = z.im;
            real[i + m][j + m] = z.re;
        }
    }
    jacobi_eigenvalues(real)
        .iter()
        .map(|l| l.abs())
        .sum::<f64>()
        / 4.0
}

pub fn oracle_hermitian_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.rows();
    let mut real = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            real[i][j] = z.re;
            real[i][j + n] = -z.im;
            real[i + n][j] = z.im;
            real[i + n][j + n] = z.re;
        }
    }
    let mut ev = jacobi_eigenvalues(real);
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
    permcrit::numerics::random::ginibre(n, n, &mut rng(seed))
}

pub fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let g = random_matrix(n, seed);
    g.linear_combination(0.5, &g.adjoint(), 0.5).unwrap()
}

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images(images).unwrap()
}

pub fn arb_permutation(parties: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=2 * parties).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

/// Party count and three permutations of that size.
pub fn arb_triple(
    max_parties: usize,
) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_parties)
        .prop_flat_map(|r| (arb_permutation(r), arb_permutation(r), arb_permutation(r)))
}
