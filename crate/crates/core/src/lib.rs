//! # permcrit
//!
//! Independent permutation separability criteria for `r`-partite states
//! with equal local dimensions.
//!
//! A permutation `σ` of the `2r` index slots of a density matrix induces the
//! map `Λ_σ`; a state is entangled whenever `‖Λ_σ(ρ)‖₁ > 1`. Many
//! permutations give the same criterion. This crate
//!
//! - does exact arithmetic on slot permutations and decides when two of them
//!   yield dependent criteria ([`perm`]),
//! - enumerates one canonical representative per independent criterion as a
//!   head/tail/loop/free role assignment and counts them ([`criteria`]),
//! - evaluates criteria on dense states via trace norms ([`numerics`]),
//! - provides brute-force oracles and the randomized verification suites
//!   behind the command-line tool ([`harness`]).

pub mod criteria;
pub mod error;
pub mod harness;
pub mod numerics;
pub mod perm;

pub use criteria::{
    canonicalize, class_of, count_classes, enumerate_classes, label_class, CriterionClass, Role,
    RoleAssignment,
};
pub use error::{Error, Result, StateInvariant};
pub use numerics::{apply_criterion, trace_norm, ComplexMatrix, DensityMatrix};
pub use perm::{dependent, Permutation};
