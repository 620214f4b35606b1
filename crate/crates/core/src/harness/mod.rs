//! Oracles, randomized verification suites and report types behind the CLI.

mod census;
mod evaluate;
pub mod oracle;
mod sweep;
mod verify;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{trace_norm, DensityMatrix};
use crate::perm::Permutation;

pub use census::ClassCensus;
pub use evaluate::{evaluate_state, ClassRecord, EvaluationReport, DEFAULT_VIOLATION_TOLERANCE};
pub use oracle::brute_force_class_count;
pub use sweep::{beta_sweep, BetaSweepReport, ClassThreshold, RowThreshold, BISECTION_DEPTH};
pub use verify::{
    random_norm_preserving, verify_distinctness, verify_norm_preserving, verify_rule5,
    verify_soundness, DistinctnessReport, NormPreservingReport, Offender, Rule5Report, SampleGap,
    SoundnessReport,
};

/// Largest party count for randomized suites without `allow_large`.
pub const DESK_MAX_PARTIES: usize = 6;
/// Hard ceiling for randomized suites.
pub const LARGE_MAX_PARTIES: usize = 8;
/// Rank of the random states in the distinctness suite unless overridden.
/// Full-rank samples are often PPT, which pins every QT norm to 1.
pub const DISTINCTNESS_RANK: usize = 3;

#[derive(Debug, Clone, Serialize)]
pub struct VerificationConfig {
    pub parties: usize,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub equality_threshold: f64,
    pub distinctness_threshold: f64,
    /// Rank of the random states; `None` means full rank, except for the
    /// distinctness suite, which uses [`DISTINCTNESS_RANK`].
    pub state_rank: Option<usize>,
    /// Permit `r = 7, 8` (256x256 SVDs over thousands of classes).
    pub allow_large: bool,
}

impl VerificationConfig {
    pub fn new(parties: usize, dim: usize, samples: usize, seed: u64) -> Self {
        VerificationConfig {
            parties,
            dim,
            samples,
            seed,
            tolerance: 1e-10,
            equality_threshold: 1e-10,
            distinctness_threshold: 1e-6,
            state_rank: None,
            allow_large: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::invalid("samples must be at least 1"));
        }
        if self.dim < 2 {
            return Err(Error::invalid("local dimension must be at least 2"));
        }
        let limit = if self.allow_large {
            LARGE_MAX_PARTIES
        } else {
            DESK_MAX_PARTIES
        };
        if self.parties == 0 || self.parties > limit {
            let hint = if self.parties <= LARGE_MAX_PARTIES && !self.allow_large {
                " (r = 7, 8 need the large-run flag)"
            } else {
                ""
            };
            return Err(Error::invalid(format!(
                "party count {} outside 1..={limit}{hint}",
                self.parties
            )));
        }
        if self.state_rank == Some(0) {
            return Err(Error::invalid("state rank must be at least 1"));
        }
        for (name, v) in [
            ("tolerance", self.tolerance),
            ("equality threshold", self.equality_threshold),
            ("distinctness threshold", self.distinctness_threshold),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Seed of the `i`-th sample; rerunning with this seed and one sample
    /// reproduces that state.
    pub fn sample_seed(&self, i: usize) -> u64 {
        self.seed.wrapping_add(i as u64)
    }

    pub(crate) fn sample_rng(&self, i: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.sample_seed(i))
    }
}

/// `‖Λ_σ(ρ)‖₁` for each permutation, evaluated in parallel; order matches
/// the input.
pub fn criterion_norms(rho: &DensityMatrix, perms: &[Permutation]) -> Result<Vec<f64>> {
    perms
        .par_iter()
        .map(|sigma| trace_norm(&rho.apply(sigma)?))
        .collect()
}
