use std::collections::BTreeMap;

use braidsim::exchange::{Estimate, SettingRun, TomographyRun};
use braidsim::TomographyResult;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub experiment: String,
    pub seed: u64,
    pub rng: String,
    pub circuit_id: String,
    pub noise_id: Option<String>,
    pub device_id: Option<String>,
    pub device_name: Option<String>,
    pub compiled: bool,
    pub assignment: Option<String>,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomographyReport {
    pub settings: Vec<SettingRun>,
    pub bloch: [f64; 3],
    /// Row-major entries as `[re, im]`.
    pub density: [[[f64; 2]; 2]; 2],
    pub fidelity: f64,
    pub closest_pure: f64,
}

impl From<&TomographyRun> for TomographyReport {
    fn from(run: &TomographyRun) -> Self {
        let r: &TomographyResult = &run.result;
        TomographyReport {
            settings: run.settings.clone(),
            bloch: r.bloch,
            density: r.density.map(|row| row.map(|z| [z.re, z.im])),
            fidelity: r.fidelity_to_target,
            closest_pure: r.closest_pure_fidelity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Shots sampled (per setting for tomography).
    pub shots: usize,
    /// Post-selected shots of the logical-`Z` circuit.
    pub retained: usize,
    pub acceptance: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "stderr_C")]
    pub stderr_c: f64,
    /// Post-selected `(v1, v3)` counts keyed `00`, `01`, `10`, `11`.
    pub outcome_counts: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tomography: Option<TomographyReport>,
    pub metadata: Metadata,
}

impl Report {
    pub fn correlation(&self) -> Estimate {
        Estimate {
            value: self.c,
            stderr: self.stderr_c,
            samples: self.retained,
        }
    }
}

/// Printed with exit code 3 when no shot survives post-selection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UndefinedReport {
    pub error: String,
    pub message: String,
    pub shots: usize,
    pub retained: usize,
    pub metadata: Metadata,
}

pub fn pair_key(index: usize) -> String {
    format!("{}{}", index >> 1, index & 1)
}
