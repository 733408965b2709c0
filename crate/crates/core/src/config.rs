//! Scenario files.
//!
//! A scenario is a single JSON object:
//!
//! ```json
//! { "H_m": 5, "D_m": 8, "P_dBm": 40, "eta": 0.5, "beta0_dB": -30, "T_s": 1, "V_mps": 10 }
//! ```
//!
//! `V_mps` may be the string `"inf"`; `beta0_dB` defaults to -30 dB. Errors point at
//! the offending line.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{db_to_linear, dbm_to_watts, SpeedLimit, SystemParams};

fn default_beta0_db() -> f64 {
    -30.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(rename = "H_m")]
    pub altitude_m: f64,
    #[serde(rename = "D_m")]
    pub separation_m: f64,
    #[serde(rename = "P_dBm")]
    pub tx_power_dbm: f64,
    pub eta: f64,
    #[serde(rename = "beta0_dB", default = "default_beta0_db")]
    pub beta0_db: f64,
    #[serde(rename = "T_s")]
    pub duration_s: f64,
    #[serde(rename = "V_mps")]
    pub max_speed: SpeedLimit,
}

impl Scenario {
    pub fn to_params(&self) -> Result<SystemParams> {
        SystemParams::new(
            self.altitude_m,
            self.separation_m,
            dbm_to_watts(self.tx_power_dbm),
            self.eta,
            db_to_linear(self.beta0_db),
            self.duration_s,
            self.max_speed,
        )
    }
}

fn json_key(field: &str) -> &'static str {
    match field {
        "altitude" => "H_m",
        "separation" => "D_m",
        "tx_power" => "P_dBm",
        "efficiency" => "eta",
        "ref_gain" => "beta0_dB",
        "duration" => "T_s",
        "max_speed" => "V_mps",
        _ => "",
    }
}

/// 1-based line of the first occurrence of `"key"`, if any.
fn key_line(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

/// Parses and validates a scenario. `origin` names the source in error messages.
pub fn parse_scenario(text: &str, origin: &str) -> Result<(Scenario, SystemParams)> {
    let scenario: Scenario =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("{origin}:{}:{}: {e}", e.line(), e.column())))?;
    let params = scenario.to_params().map_err(|e| match &e {
        Error::InvalidParams { field, .. } => {
            let key = json_key(field);
            match key_line(text, key) {
                Some(line) => Error::Config(format!("{origin}:{line}: {key}: {e}")),
                None => Error::Config(format!("{origin}: {e}")),
            }
        }
        _ => e,
    })?;
    Ok((scenario, params))
}

pub fn load_scenario(path: &Path) -> Result<(Scenario, SystemParams)> {
    let text = std::fs::read_to_string(path)?;
    parse_scenario(&text, &path.display().to_string())
}
