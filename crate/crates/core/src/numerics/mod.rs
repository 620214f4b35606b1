//! Dense complex matrices with party structure, the criterion map `Λ_σ`,
//! trace norms, and concrete states.

mod apply;
mod density;
pub mod io;
mod matrix;
pub mod random;
mod states;

pub use apply::{apply_criterion, party_permutation, reorder_parties};
pub use density::{
    maximally_mixed, mix_with_noise, tensor_states, DensityMatrix, HERMITIAN_TOLERANCE,
    PSD_TOLERANCE, TRACE_TOLERANCE,
};
pub use matrix::{tensor_product, trace_norm, ComplexMatrix};
pub use random::{random_density, random_density_of_rank, random_separable};
pub use states::{bell, chessboard};
