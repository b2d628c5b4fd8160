use std::fmt;

use thiserror::Error;

use crate::constellation::SatelliteId;
use crate::isl::IslKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A required +grid link that failed its range or visibility check.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeViolation {
    pub a: SatelliteId,
    pub b: SatelliteId,
    pub kind: IslKind,
    pub distance_km: f64,
    pub reason: ViolationReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationReason {
    Occluded,
    BeyondTerminalRange,
}

impl fmt::Display for EdgeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reason = match self.reason {
            ViolationReason::Occluded => "occluded by earth",
            ViolationReason::BeyondTerminalRange => "beyond terminal range",
        };
        write!(
            f,
            "{} {}-{} at {:.3} km {}",
            self.kind, self.a, self.b, self.distance_km, reason
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid constellation: {0}")]
    InvalidSpec(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(&'static str),

    #[error("infeasible topology: {} required link(s) violate constraints; first: {}", .0.len(), .0[0])]
    InfeasibleTopology(Vec<EdgeViolation>),

    #[error("coverage: |latitude| {latitude_deg} exceeds constellation reach {limit_deg}")]
    Coverage { latitude_deg: f64, limit_deg: f64 },

    #[error("coverage: no satellite above {min_elevation_deg} deg elevation")]
    NoVisibleSatellite { min_elevation_deg: f64 },

    #[error("no path from {from} to {to}")]
    NoPath { from: SatelliteId, to: SatelliteId },

    #[error("unknown satellite {0}")]
    UnknownNode(SatelliteId),

    #[error("no crossover: fiber speed {fiber_km_s} km/s is not slower than vacuum speed {vacuum_km_s} km/s")]
    NoCrossover { fiber_km_s: f64, vacuum_km_s: f64 },

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("unknown terminal '{0}'")]
    UnknownTerminal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Errors caused by the physical scenario rather than the input format.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::InfeasibleTopology(_)
                | Error::Coverage { .. }
                | Error::NoVisibleSatellite { .. }
                | Error::NoPath { .. }
                | Error::NoCrossover { .. }
        )
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
