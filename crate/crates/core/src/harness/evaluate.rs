use std::fmt::Write as _;

use serde::Serialize;

use super::criterion_norms;
use crate::criteria::{enumerate_classes, CriterionClass};
use crate::error::{Error, Result};
use crate::numerics::DensityMatrix;
use crate::perm::Permutation;

/// Violation margin used when none is given.
pub const DEFAULT_VIOLATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ClassRecord {
    pub class_id: usize,
    pub label: String,
    pub roles: String,
    pub trace_norm: f64,
    pub violated: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct EvaluationReport {
    pub dim: usize,
    pub parties: usize,
    pub source: String,
    pub tolerance: f64,
    pub records: Vec<ClassRecord>,
}

impl EvaluationReport {
    pub fn any_violated(&self) -> bool {
        self.records.iter().any(|r| r.violated)
    }

    pub fn record(&self, roles: &str) -> Option<&ClassRecord> {
        self.records.iter().find(|r| r.roles == roles)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "state: {} (d = {}, r = {}), violation when norm > 1 + {:e}",
            self.source, self.dim, self.parties, self.tolerance
        );
        let _ = writeln!(
            out,
            "{:>5}  {:<10} {:<10} {:>20}  violated",
            "id", "roles", "label", "trace norm"
        );
        for r in &self.records {
            let _ = writeln!(
                out,
                "{:>5}  {:<10} {:<10} {:>20.15}  {}",
                r.class_id,
                r.roles,
                r.label,
                r.trace_norm,
                if r.violated { "yes" } else { "no" }
            );
        }
        out
    }
}

/// Trace norm of every class (or of the classes in `selection`, by id) on
/// `rho`; a class is violated when its norm exceeds `1 + tolerance`.
pub fn evaluate_state(
    rho: &DensityMatrix,
    source: &str,
    selection: Option<&[usize]>,
    tolerance: f64,
) -> Result<EvaluationReport> {
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::invalid(format!(
            "tolerance must be non-negative, got {tolerance}"
        )));
    }
    let all = enumerate_classes(rho.parties())?;
    let chosen: Vec<&CriterionClass> = match selection {
        None => all.iter().collect(),
        Some(ids) => ids
            .iter()
            .map(|&id| {
                all.get(id).ok_or_else(|| {
                    Error::invalid(format!(
                        "class id {id} out of range (r = {} has {} classes)",
                        rho.parties(),
                        all.len()
                    ))
                })
            })
            .collect::<Result<_>>()?,
    };
    let perms: Vec<Permutation> = chosen.iter().map(|c| c.to_permutation()).collect();
    let norms = criterion_norms(rho, &perms)?;
    let records = chosen
        .iter()
        .zip(norms)
        .map(|(c, n)| ClassRecord {
            class_id: c.id,
            label: c.label.clone(),
            roles: c.canonical.to_string(),
            trace_norm: n,
            violated: n > 1.0 + tolerance,
        })
        .collect();
    Ok(EvaluationReport {
        dim: rho.dim(),
        parties: rho.parties(),
        source: source.to_string(),
        tolerance,
        records,
    })
}
