//! The JSON document driving a sweep.

use std::path::Path;

use quasimarket::deposit::{DepositScenario, Statistics};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenario: ScenarioFields,
    pub sweep: SweepGrid,
    #[serde(default)]
    pub options: SweepOptions,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFields {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "G")]
    pub g: u64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub statistics: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub beta_min: f64,
    pub beta_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepOptions {
    #[serde(default)]
    pub emit_oracle: bool,
    #[serde(default)]
    pub asymptotics: bool,
}

impl ScenarioFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ScenarioFile =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid scenario file: {e}")))?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), CliError> {
        let SweepGrid {
            beta_min,
            beta_max,
            points,
        } = self.sweep;
        if !(beta_min.is_finite() && beta_max.is_finite()) || beta_min <= 0.0 {
            return Err(CliError::Input(format!(
                "sweep bounds must be finite with beta_min > 0, got [{beta_min}, {beta_max}]"
            )));
        }
        if beta_min >= beta_max {
            return Err(CliError::Input(format!(
                "beta_min must be below beta_max, got {beta_min} >= {beta_max}"
            )));
        }
        if points < 2 {
            return Err(CliError::Input(format!("sweep needs at least 2 points, got {points}")));
        }
        self.deposit_scenario().map(|_| ())
    }

    pub fn deposit_scenario(&self) -> Result<DepositScenario, CliError> {
        let s = &self.scenario;
        let statistics: Statistics = s.statistics.parse().map_err(CliError::Library)?;
        DepositScenario::new(s.n, s.g, s.lambda1, s.lambda2, statistics).map_err(CliError::Library)
    }

    /// The linear grid, endpoints included.
    pub fn betas(&self) -> Vec<f64> {
        let SweepGrid {
            beta_min,
            beta_max,
            points,
        } = self.sweep;
        let last = (points - 1) as f64;
        (0..points)
            .map(|i| {
                let t = i as f64 / last;
                beta_min * (1.0 - t) + beta_max * t
            })
            .collect()
    }
}
