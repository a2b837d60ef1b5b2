//! On-disk generator description: a JSON document with decimal-text
//! complex entries, hand-writable from printed matrices.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "alphabet": ["0", "1"],
//!   "unitary": [[[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]],
//!               [[0.7071067811865476, 0.0], [-0.7071067811865476, 0.0]]],
//!   "projectors": {
//!     "0": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
//!     "1": [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
//!   },
//!   "initial_state": [[1.0, 0.0], [0.0, 0.0]]
//! }
//! ```
//!
//! Every complex entry is a `[re, im]` pair. `initial_state` is an
//! optional row vector; when absent, consumers start from the stationary
//! ensemble.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{Alphabet, QuantumGenerator};
use crate::linalg::{Complex64, ComplexMatrix, StateVector};

type Entry = [f64; 2];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub dim: usize,
    pub alphabet: Vec<String>,
    pub unitary: Vec<Vec<Entry>>,
    pub projectors: BTreeMap<String, Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<Vec<Entry>>,
}

fn matrix_from_entries(rows: &[Vec<Entry>], dim: usize, what: &str) -> Result<ComplexMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::ModelFile(format!(
            "{what} must be a {dim}x{dim} matrix of [re, im] pairs"
        )));
    }
    let complex: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    let m = ComplexMatrix::from_rows(&complex).expect("shape checked");
    if !m.all_finite() {
        return Err(Error::ModelFile(format!("{what} has a non-finite entry")));
    }
    Ok(m)
}

fn matrix_to_entries(m: &ComplexMatrix) -> Vec<Vec<Entry>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect()
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ModelFile(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ModelFile(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Snapshot of an in-memory generator, e.g. for writing templates.
    pub fn from_generator(generator: &QuantumGenerator, initial: Option<&StateVector>) -> Self {
        let alphabet: Vec<String> = generator
            .alphabet()
            .symbols()
            .iter()
            .map(|s| s.to_string())
            .collect();
        let projectors = generator
            .alphabet()
            .symbols()
            .iter()
            .map(|&s| {
                (
                    s.to_string(),
                    matrix_to_entries(generator.projector(s).expect("own symbol")),
                )
            })
            .collect();
        Self {
            dim: generator.dim(),
            alphabet,
            unitary: matrix_to_entries(generator.unitary()),
            projectors,
            initial_state: initial.map(|v| {
                v.amplitudes().iter().map(|a| [a.re, a.im]).collect()
            }),
        }
    }

    /// Validates the document and builds the generator plus the optional
    /// initial state.
    pub fn build(&self, tol: f64) -> Result<(QuantumGenerator, Option<StateVector>)> {
        let symbols: Vec<char> = self
            .alphabet
            .iter()
            .map(|s| {
                let mut chars = s.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(Error::ModelFile(format!(
                        "alphabet entry '{s}' must be a single character"
                    ))),
                }
            })
            .collect::<Result<_>>()?;
        let alphabet = Alphabet::new(symbols)?;

        let unitary = matrix_from_entries(&self.unitary, self.dim, "unitary")?;
        let mut projectors = Vec::with_capacity(self.projectors.len());
        for (symbol_text, rows) in &self.projectors {
            let mut chars = symbol_text.chars();
            let symbol = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(Error::ModelFile(format!(
                        "projector key '{symbol_text}' must be a single character"
                    )))
                }
            };
            projectors.push((
                symbol,
                matrix_from_entries(rows, self.dim, &format!("projector '{symbol_text}'"))?,
            ));
        }

        let generator =
            QuantumGenerator::build_with_tol(self.dim, alphabet, unitary, projectors, tol)?;

        let initial = match &self.initial_state {
            Some(entries) => {
                if entries.len() != self.dim {
                    return Err(Error::ModelFile(format!(
                        "initial_state must have {} entries",
                        self.dim
                    )));
                }
                let v = StateVector::new(
                    entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
                );
                if !v.all_finite() {
                    return Err(Error::ModelFile(
                        "initial_state has a non-finite entry".to_string(),
                    ));
                }
                Some(v.normalized()?)
            }
            None => None,
        };
        Ok((generator, initial))
    }
}
