use num_complex::Complex64;

use super::density::DensityMatrix;
use super::matrix::ComplexMatrix;

#[rustfmt::skip]
const CHESSBOARD_NUMERATORS: [[i8; 9]; 9] = [
    [1,  0,  1,  0,  0,  0,  1,  0, 0],
    [0,  1,  0,  0,  0, -1,  0, -1, 0],
    [1,  0,  2,  0, -1,  0,  0,  0, 0],
    [0,  0,  0,  1,  0, -1,  0,  1, 0],
    [0,  0, -1,  0,  1,  0,  1,  0, 0],
    [0, -1,  0, -1,  0,  2,  0,  0, 0],
    [1,  0,  0,  0,  1,  0,  2,  0, 0],
    [0, -1,  0,  1,  0,  0,  0,  2, 0],
    [0,  0,  0,  0,  0,  0,  0,  0, 0],
];

/// The 3x3 chess-board bound entangled state (entries in units of 1/12).
/// It is PPT and its realigned trace norm is 7/6.
pub fn chessboard() -> DensityMatrix {
    let m = ComplexMatrix::from_fn(9, 9, |i, j| {
        Complex64::new(f64::from(CHESSBOARD_NUMERATORS[i][j]) / 12.0, 0.0)
    });
    DensityMatrix::new(m, 3, 2).expect("chess-board state is a valid density matrix")
}

/// `½ Σ_ij |ii⟩⟨jj|` on two qubits.
pub fn bell() -> DensityMatrix {
    let m = ComplexMatrix::from_fn(4, 4, |i, j| {
        let v = if i % 3 == 0 && j % 3 == 0 { 0.5 } else { 0.0 };
        Complex64::new(v, 0.0)
    });
    DensityMatrix::new(m, 2, 2).expect("Bell state is a valid density matrix")
}
