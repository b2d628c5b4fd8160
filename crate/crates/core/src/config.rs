//! JSON scenario configuration for the command-line tool.
//!
//! Every key is optional; unknown keys are rejected. Example:
//!
//! ```json
//! {
//!   "constellation": "starlink-phase1-modified",
//!   "earth_model": "visibility",
//!   "strategy": "plus_grid",
//!   "partner_rule": "nearest",
//!   "terminal": "CONDOR",
//!   "setup_time_s": 10,
//!   "time_s": 0,
//!   "use_case": { "per_hop_theta_deg": 5.45, "ingress_egress_km": 1100, "fiber_refractive_index": 1.4675 }
//! }
//! ```

use std::path::Path;

use serde::de::{self, Deserializer};
use serde::Deserialize;

use crate::constellation::{preset, ConstellationSpec};
use crate::error::{Error, Result};
use crate::geometry::EarthModel;
use crate::isl::{find_terminal, PartnerRule, Strategy, TerminalSpec, TopologyOptions, DEFAULT_SETUP_TIME_S};
use crate::latency::{UseCaseOverrides, UseCaseScenario};

/// A preset name or explicit fields.
#[derive(Debug, Clone, PartialEq)]
pub enum Named<T> {
    Preset(String),
    Explicit(T),
}

impl<'de, T: de::DeserializeOwned> Deserialize<'de> for Named<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => Ok(Named::Preset(s)),
            v @ serde_json::Value::Object(_) => serde_json::from_value(v)
                .map(Named::Explicit)
                .map_err(de::Error::custom),
            other => Err(de::Error::custom(format!(
                "expected a preset name or an object, got {other}"
            ))),
        }
    }
}

fn default_constellation() -> Named<ConstellationSpec> {
    Named::Preset("starlink-phase1-modified".into())
}

fn default_earth() -> Named<EarthModel> {
    Named::Preset("visibility".into())
}

fn default_setup() -> f64 {
    DEFAULT_SETUP_TIME_S
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_constellation")]
    pub constellation: Named<ConstellationSpec>,
    #[serde(default = "default_earth")]
    pub earth_model: Named<EarthModel>,
    #[serde(default)]
    pub strategy: Strategy,
    #[serde(default)]
    pub partner_rule: PartnerRule,
    #[serde(default)]
    pub terminal: Option<String>,
    #[serde(default = "default_setup")]
    pub setup_time_s: f64,
    /// Snapshot epoch, seconds.
    #[serde(default)]
    pub time_s: f64,
    #[serde(default)]
    pub min_elevation_deg: Option<f64>,
    #[serde(default)]
    pub use_case: UseCaseOverrides,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config is valid")
    }
}

/// A validated configuration with every name resolved.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub spec: ConstellationSpec,
    pub earth: EarthModel,
    pub topology: TopologyOptions,
    pub terminal: Option<TerminalSpec>,
    pub setup_time_s: f64,
    pub time_s: f64,
    pub min_elevation_deg: Option<f64>,
    pub use_case: UseCaseScenario,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn resolve(&self) -> Result<Scenario> {
        let spec = match &self.constellation {
            Named::Preset(name) => preset(name)?,
            Named::Explicit(spec) => *spec,
        };
        spec.validate()?;
        let earth = match &self.earth_model {
            Named::Preset(name) => EarthModel::preset(name).ok_or_else(|| Error::UnknownPreset(name.clone()))?,
            Named::Explicit(e) => *e,
        };
        earth.validate()?;
        let terminal = self.terminal.as_deref().map(find_terminal).transpose()?;
        if !(self.setup_time_s.is_finite() && self.setup_time_s >= 0.0) {
            return Err(Error::domain("setup_time_s must be >= 0"));
        }
        if !(self.time_s.is_finite() && self.time_s >= 0.0) {
            return Err(Error::domain("time_s must be >= 0"));
        }
        if let Some(m) = self.min_elevation_deg {
            if !(-90.0..=90.0).contains(&m) {
                return Err(Error::domain("min_elevation_deg must be in [-90, 90]"));
            }
        }
        Ok(Scenario {
            spec,
            earth,
            topology: TopologyOptions {
                strategy: self.strategy,
                partner_rule: self.partner_rule,
                terminal: terminal.clone(),
                ..TopologyOptions::default()
            },
            terminal,
            setup_time_s: self.setup_time_s,
            time_s: self.time_s,
            min_elevation_deg: self.min_elevation_deg,
            use_case: UseCaseScenario::with_overrides(&self.use_case)?,
        })
    }
}
