//! Noise robustness of the four-party criteria on two chess-board copies,
//! `ρ(β) = (1-β)·ρ_c⊗ρ_c + β·I/81`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::{enumerate_classes, CriterionClass};
use crate::error::{Error, Result};
use crate::numerics::{
    apply_criterion, chessboard, maximally_mixed, tensor_states, trace_norm, ComplexMatrix,
};

pub const BISECTION_DEPTH: usize = 40;
const SWEEP_DIM: usize = 3;
const SWEEP_PARTIES: usize = 4;

#[derive(Debug, Clone, Serialize)]
pub struct ClassThreshold {
    pub class_id: usize,
    pub label: String,
    pub roles: String,
    pub norm_at_zero: f64,
    /// Largest β found with `‖Λ_σ(ρ(β))‖ > 1 + tolerance`; 0 if none.
    pub threshold: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowThreshold {
    pub label: String,
    pub classes: usize,
    pub max_threshold: f64,
    pub min_threshold: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BetaSweepReport {
    pub steps: usize,
    pub tolerance: f64,
    pub classes: Vec<ClassThreshold>,
    pub rows: Vec<RowThreshold>,
}

impl BetaSweepReport {
    pub fn row(&self, label: &str) -> Option<&RowThreshold> {
        self.rows.iter().find(|r| r.label == label)
    }
}

/// Scans `β = j/steps` for the last violated grid point, then bisects the
/// crossing to it from the next grid point.
pub fn beta_sweep(steps: usize, tolerance: f64) -> Result<BetaSweepReport> {
    if steps < 10 {
        return Err(Error::invalid(format!(
            "need at least 10 grid steps, got {steps}"
        )));
    }
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::invalid(format!(
            "tolerance must be non-negative, got {tolerance}"
        )));
    }
    let rho_c = chessboard();
    let pair = tensor_states(&rho_c, &rho_c)?;
    let noise = maximally_mixed(SWEEP_DIM, SWEEP_PARTIES)?;
    let classes = enumerate_classes(SWEEP_PARTIES)?;

    let thresholds: Vec<ClassThreshold> = classes
        .par_iter()
        .map(|class| {
            let sigma = class.to_permutation();
            // Λ_σ is linear, so Λ_σ(ρ(β)) mixes the two images
            let signal = apply_criterion(pair.matrix(), SWEEP_DIM, &sigma)?;
            let flat = apply_criterion(noise.matrix(), SWEEP_DIM, &sigma)?;
            class_threshold(class, &signal, &flat, steps, tolerance)
        })
        .collect::<Result<_>>()?;

    let mut grouped: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for t in &thresholds {
        grouped
            .entry(t.label.as_str())
            .or_default()
            .push(t.threshold);
    }
    let rows = grouped
        .into_iter()
        .map(|(label, ts)| RowThreshold {
            label: label.to_string(),
            classes: ts.len(),
            max_threshold: ts.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            min_threshold: ts.iter().copied().fold(f64::INFINITY, f64::min),
        })
        .collect();
    Ok(BetaSweepReport {
        steps,
        tolerance,
        classes: thresholds,
        rows,
    })
}

fn class_threshold(
    class: &CriterionClass,
    signal: &ComplexMatrix,
    flat: &ComplexMatrix,
    steps: usize,
    tolerance: f64,
) -> Result<ClassThreshold> {
    let norm = |beta: f64| -> Result<f64> {
        trace_norm(&signal.linear_combination(1.0 - beta, flat, beta)?)
    };
    let violated = |beta: f64| -> Result<bool> { Ok(norm(beta)? > 1.0 + tolerance) };

    let grid = |j: usize| j as f64 / steps as f64;
    let mut last = None;
    for j in 0..=steps {
        if violated(grid(j))? {
            last = Some(j);
        }
    }
    let threshold = match last {
        None => 0.0,
        Some(j) if j == steps => 1.0,
        Some(j) => {
            let (mut lo, mut hi) = (grid(j), grid(j + 1));
            for _ in 0..BISECTION_DEPTH {
                let mid = 0.5 * (lo + hi);
                if violated(mid)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        }
    };
    Ok(ClassThreshold {
        class_id: class.id,
        label: class.label.clone(),
        roles: class.canonical.to_string(),
        norm_at_zero: norm(0.0)?,
        threshold,
    })
}
