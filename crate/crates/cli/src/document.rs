//! JSON file formats: phase settings and amplitude vectors.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use spinj_chsh::{BipartiteState, ChshSetting, PhaseProfile, SpinJ};

use crate::error::CliError;

/// On-disk form of a [`ChshSetting`]. Phase maps are keyed by positive
/// `twice_m`, written as decimal strings in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettingDocument {
    pub twice_j: u32,
    pub alpha1: BTreeMap<u32, f64>,
    pub alpha2: BTreeMap<u32, f64>,
    pub beta1: BTreeMap<u32, f64>,
    pub beta2: BTreeMap<u32, f64>,
}

impl SettingDocument {
    pub fn from_setting(setting: &ChshSetting) -> Self {
        let map = |p: &PhaseProfile| p.positive_phases().collect::<BTreeMap<_, _>>();
        Self {
            twice_j: setting.spin().twice_j(),
            alpha1: map(&setting.alpha1),
            alpha2: map(&setting.alpha2),
            beta1: map(&setting.beta1),
            beta2: map(&setting.beta2),
        }
    }

    pub fn to_setting(&self) -> Result<ChshSetting, CliError> {
        let spin = SpinJ::new(self.twice_j).map_err(|e| CliError::Usage(e.to_string()))?;
        let profile = |name: &str, map: &BTreeMap<u32, f64>| {
            PhaseProfile::new(spin, map.iter().map(|(k, v)| (*k, *v)))
                .map_err(|e| CliError::Usage(format!("{name}: {e}")))
        };
        ChshSetting::new(
            profile("alpha1", &self.alpha1)?,
            profile("alpha2", &self.alpha2)?,
            profile("beta1", &self.beta1)?,
            profile("beta2", &self.beta2)?,
        )
        .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<ChshSetting, CliError> {
        let doc: Self = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("invalid setting document: {e}")))?;
        doc.to_setting()
    }
}

/// Parses a JSON array of `[re, im]` pairs into a state of the given spin.
pub fn parse_amplitudes(text: &str, spin: SpinJ) -> Result<BipartiteState, CliError> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("invalid amplitudes file: {e}")))?;
    if pairs.len() != spin.product_dim() {
        return Err(CliError::Mismatch(format!(
            "amplitudes have length {}, spin {} needs {}",
            pairs.len(),
            spin,
            spin.product_dim()
        )));
    }
    let amplitudes = pairs
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    BipartiteState::new(spin, amplitudes).map_err(|e| CliError::Usage(e.to_string()))
}
