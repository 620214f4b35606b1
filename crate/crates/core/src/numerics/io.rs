//! JSON state files.
//!
//! Either an explicit matrix,
//! `{"d": 2, "r": 2, "re": [[...], ...], "im": [[...], ...]}` with row-major
//! `d^r × d^r` arrays, or a named builtin, `{"builtin": "chessboard"}`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::{side_length, DensityMatrix};
use super::matrix::ComplexMatrix;
use super::states;
use crate::error::{Error, Result, StateInvariant};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum StateFile {
    Builtin {
        builtin: String,
    },
    Explicit {
        d: usize,
        r: usize,
        re: Vec<Vec<f64>>,
        im: Vec<Vec<f64>>,
    },
}

pub const BUILTIN_NAMES: [&str; 2] = ["chessboard", "bell"];

pub fn builtin_state(name: &str) -> Result<DensityMatrix> {
    match name {
        "chessboard" => Ok(states::chessboard()),
        "bell" => Ok(states::bell()),
        other => Err(Error::Parse(format!(
            "unknown builtin state {other:?} (known: {})",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        StateFile::Explicit {
            d: rho.dim(),
            r: rho.parties(),
            re: part(|z| z.re),
            im: part(|z| z.im),
        }
    }

    /// Builds and validates the state.
    pub fn into_state(self) -> Result<DensityMatrix> {
        match self {
            StateFile::Builtin { builtin } => builtin_state(&builtin),
            StateFile::Explicit { d, r, re, im } => {
                let shape_error = |detail: String| Error::InvalidState {
                    invariant: StateInvariant::Shape,
                    detail,
                };
                if d < 2 || r < 1 {
                    return Err(shape_error(format!(
                        "need d >= 2 and r >= 1, got d = {d}, r = {r}"
                    )));
                }
                let n = side_length(d, r)?;
                for (name, part) in [("re", &re), ("im", &im)] {
                    if part.len() != n || part.iter().any(|row| row.len() != n) {
                        return Err(shape_error(format!(
                            "\"{name}\" must be {n}x{n} for d = {d}, r = {r}"
                        )));
                    }
                }
                let data = re
                    .iter()
                    .zip(&im)
                    .flat_map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| Complex64::new(x, y)))
                    .collect();
                DensityMatrix::new(ComplexMatrix::from_row_major(n, n, data)?, d, r)
            }
        }
    }
}

pub fn parse_state(json: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_state()
}

pub fn read_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    parse_state(&std::fs::read_to_string(path)?)
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string(&StateFile::from_state(rho)).expect("state file serializes")
}
