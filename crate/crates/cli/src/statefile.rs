//! JSON state files.
//!
//! ```json
//! {"dim": 2, "kind": "pure", "amplitudes": [[1, 0], [0, 0]]}
//! {"dim": 2, "kind": "density", "matrix": [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]}
//! {"dim": 2, "kind": "bloch", "bloch": [0.6, 0, 0.8]}
//! {"dim": 2, "kind": "mixture", "components": [{"weight": 0.5, "amplitudes": [[1, 0], [0, 0]]}, ...]}
//! ```
//!
//! Complex numbers are always `[re, im]` pairs and matrices are row-major.

use std::path::Path;

use serde::{Deserialize, Serialize};
use stabc_core::states::{bloch_to_state, BlochVector};
use stabc_core::{Complex64, ComplexMatrix, DensityState};

use crate::error::{CliError, CliResult};

/// Pure amplitudes closer than this to unit norm are accepted as they are.
const NORM_TOL: f64 = 1e-8;
/// Beyond `NORM_TOL` but within this, amplitudes are rescaled with a warning.
const RENORMALIZE_TOL: f64 = 1e-4;
const WEIGHT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Pure { amplitudes: Vec<[f64; 2]> },
    Density { matrix: Vec<[f64; 2]> },
    Bloch { bloch: [f64; 3] },
    Mixture { components: Vec<MixtureComponent> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub weight: f64,
    pub amplitudes: Vec<[f64; 2]>,
}

/// A validated state plus any non-fatal notes produced while loading it.
#[derive(Debug, Clone)]
pub struct LoadedState {
    pub state: DensityState,
    pub warnings: Vec<String>,
}

fn to_complex(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

pub fn to_pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

impl StateFile {
    pub fn pure(amplitudes: &[Complex64]) -> Self {
        StateFile {
            dim: amplitudes.len(),
            payload: Payload::Pure {
                amplitudes: to_pairs(amplitudes),
            },
        }
    }

    pub fn density(rho: &DensityState) -> Self {
        StateFile {
            dim: rho.dim(),
            payload: Payload::Density {
                matrix: to_pairs(&rho.matrix().to_row_major()),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed state file: {e}"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files always serialize")
    }

    /// Validates the file and builds the density matrix it describes.
    pub fn load(&self) -> Result<LoadedState, String> {
        let d = self.dim;
        let mut warnings = Vec::new();
        let state = match &self.payload {
            Payload::Pure { amplitudes } => {
                let v = normalized(d, amplitudes, "amplitudes", &mut warnings)?;
                DensityState::pure(&v).map_err(|e| e.to_string())?
            }
            Payload::Density { matrix } => {
                if matrix.len() != d * d {
                    return Err(format!("matrix has {} entries, expected dim² = {}", matrix.len(), d * d));
                }
                let m = ComplexMatrix::new(d, to_complex(matrix)).map_err(|e| e.to_string())?;
                DensityState::new(m).map_err(|e| format!("density matrix invalid: {e}"))?
            }
            Payload::Bloch { bloch } => {
                if d != 2 {
                    return Err(format!("bloch states require dim = 2, got dim = {d}"));
                }
                let b = BlochVector::new(bloch[0], bloch[1], bloch[2]).map_err(|e| e.to_string())?;
                bloch_to_state(b).map_err(|e| e.to_string())?
            }
            Payload::Mixture { components } => {
                if components.is_empty() {
                    return Err("mixture has no components".into());
                }
                if let Some(w) = components.iter().map(|c| c.weight).find(|w| w.is_nan() || *w < 0.0) {
                    return Err(format!("mixture weight {w} must be non-negative"));
                }
                let total: f64 = components.iter().map(|c| c.weight).sum();
                if (total - 1.0).abs() > WEIGHT_TOL {
                    return Err(format!("mixture weights sum to {total}, expected 1 within {WEIGHT_TOL:e}"));
                }
                let mut parts = Vec::with_capacity(components.len());
                for (i, c) in components.iter().enumerate() {
                    let v = normalized(d, &c.amplitudes, &format!("component {i}"), &mut warnings)?;
                    parts.push((c.weight / total, DensityState::pure(&v).map_err(|e| e.to_string())?));
                }
                let refs: Vec<(f64, &DensityState)> = parts.iter().map(|(w, s)| (*w, s)).collect();
                DensityState::mixture(&refs).map_err(|e| e.to_string())?
            }
        };
        Ok(LoadedState { state, warnings })
    }
}

fn normalized(d: usize, pairs: &[[f64; 2]], what: &str, warnings: &mut Vec<String>) -> Result<Vec<Complex64>, String> {
    if pairs.len() != d {
        return Err(format!("{what} has {} entries, expected dim = {d}", pairs.len()));
    }
    let v = to_complex(pairs);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let off = (norm - 1.0).abs();
    if off.is_nan() || off > RENORMALIZE_TOL {
        return Err(format!("{what} norm is {norm}, expected 1 within {NORM_TOL:e}"));
    }
    if off > NORM_TOL {
        warnings.push(format!("{what} norm is {norm}; renormalized"));
    }
    Ok(v.into_iter().map(|z| z / norm).collect())
}

pub fn read_state_file(path: &Path) -> CliResult<LoadedState> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let bad = |reason| CliError::StateFile {
        path: path.to_path_buf(),
        reason,
    };
    StateFile::from_json(&text).map_err(bad)?.load().map_err(bad)
}
