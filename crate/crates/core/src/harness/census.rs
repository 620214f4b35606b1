use std::collections::BTreeMap;

use serde::Serialize;

use super::oracle::{brute_force_class_count, ORACLE_MAX_PARTIES};
use crate::criteria::{count_classes, enumerate_classes};
use crate::error::{Error, Result};

/// Class counts for one party number from the closed formula, the
/// enumeration, and optionally the brute-force oracle.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ClassCensus {
    pub parties: usize,
    pub formula_count: u128,
    pub enumerated_count: usize,
    pub oracle_count: Option<usize>,
    pub per_row_counts: BTreeMap<String, usize>,
}

impl ClassCensus {
    pub fn compute(parties: usize, with_oracle: bool) -> Result<Self> {
        if with_oracle && parties > ORACLE_MAX_PARTIES {
            return Err(Error::invalid(format!(
                "the brute-force oracle enumerates (2r)! permutations and is refused for r > {ORACLE_MAX_PARTIES}"
            )));
        }
        let classes = enumerate_classes(parties)?;
        let mut per_row_counts = BTreeMap::new();
        for c in &classes {
            *per_row_counts.entry(c.label.clone()).or_insert(0) += 1;
        }
        let census = ClassCensus {
            parties,
            formula_count: count_classes(parties)?,
            enumerated_count: classes.len(),
            oracle_count: if with_oracle {
                Some(brute_force_class_count(parties)?)
            } else {
                None
            },
            per_row_counts,
        };
        Ok(census)
    }

    /// Formula, enumeration and oracle (when present) agree.
    pub fn consistent(&self) -> bool {
        let n = self.enumerated_count as u128;
        self.formula_count == n && self.oracle_count.is_none_or(|o| o as u128 == n)
    }
}
