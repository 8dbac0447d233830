//! Run configuration: a JSON file, overridden by the environment and by flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

pub const CONFIG_SCHEMA: &str = "qfsep/config/v1";
/// Overrides `output_dir` from the config file.
pub const OUT_ENV: &str = "QFSEP_OUT";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Largest accepted distance of the relator image from `±I`.
    pub relator: f64,
    /// Smallest slack that counts as a strict length inequality.
    pub triangle_slack: f64,
    /// Smallest length ratio accepted as a separation certificate.
    pub min_ratio: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            relator: qfsep::representations::RELATOR_TOL,
            triangle_slack: 1e-9,
            min_ratio: qfsep::certificates::MIN_RATIO,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub schema: String,
    pub genus: usize,
    pub bend_angle: f64,
    /// Word length bound for spectra, witnesses, certificates and limit sets.
    pub maxlen: usize,
    /// Word length bound for the length inequality harness, whose pair count grows quickly.
    pub triangle_maxlen: usize,
    #[serde(rename = "Rmax")]
    pub rmax: f64,
    pub tolerances: Tolerances,
    pub output_dir: PathBuf,
    /// Recorded in every run manifest; reserved for randomized checks.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            schema: CONFIG_SCHEMA.to_string(),
            genus: 2,
            bend_angle: 0.6,
            maxlen: 8,
            triangle_maxlen: 3,
            rmax: 12.0,
            tolerances: Tolerances::default(),
            output_dir: PathBuf::from("qfsep-out"),
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let config: Self = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(config)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.schema != CONFIG_SCHEMA {
            bail!("config schema `{}`, expected `{CONFIG_SCHEMA}`", self.schema);
        }
        if self.genus < 2 {
            bail!("genus must be at least 2, got {}", self.genus);
        }
        if !self.bend_angle.is_finite() {
            bail!("bend_angle must be finite");
        }
        if !(1..=12).contains(&self.maxlen) {
            bail!("maxlen must lie in 1..=12, got {}", self.maxlen);
        }
        if !(1..=6).contains(&self.triangle_maxlen) {
            bail!("triangle_maxlen must lie in 1..=6, got {}", self.triangle_maxlen);
        }
        if !(self.rmax.is_finite() && self.rmax > 0.0 && self.rmax <= 20.0) {
            bail!("Rmax must lie in (0, 20], got {}", self.rmax);
        }
        let t = &self.tolerances;
        for (name, v) in [("relator", t.relator), ("triangle_slack", t.triangle_slack)] {
            if !(v.is_finite() && v > 0.0) {
                bail!("tolerance {name} must be positive, got {v}");
            }
        }
        if !(t.min_ratio.is_finite() && t.min_ratio > 1.0) {
            bail!("tolerance min_ratio must exceed 1, got {}", t.min_ratio);
        }
        if self.output_dir.as_os_str().is_empty() {
            bail!("output_dir is empty");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = serde_json::from_str::<RunConfig>(r#"{"genus": 2, "colour": "red"}"#).unwrap_err();
        assert!(err.to_string().contains("colour"));
        let err = serde_json::from_str::<RunConfig>(r#"{"tolerances": {"relator": 1e-9, "x": 1}}"#).unwrap_err();
        assert!(err.to_string().contains('x'));
    }

    #[test]
    fn missing_keys_take_defaults() {
        let c: RunConfig = serde_json::from_str(r#"{"bend_angle": 0.3, "Rmax": 8}"#).unwrap();
        assert_eq!(c.genus, 2);
        assert_eq!(c.rmax, 8.0);
        c.validate().unwrap();
    }

    #[test]
    fn invalid_values_are_rejected() {
        let bad = [
            RunConfig { genus: 1, ..Default::default() },
            RunConfig { maxlen: 0, ..Default::default() },
            RunConfig { rmax: -1.0, ..Default::default() },
            RunConfig { bend_angle: f64::NAN, ..Default::default() },
            RunConfig {
                tolerances: Tolerances { min_ratio: 0.9, ..Default::default() },
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }
}
