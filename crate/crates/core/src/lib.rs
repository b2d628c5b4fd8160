//! Simulator for optical wireless (laser-linked) LEO satellite networks.
//!
//! - [`geometry`]: Earth models, chord/arc lengths, line of sight, ISL range.
//! - [`constellation`]: uniform circular constellations and presets.
//! - [`isl`]: +grid topologies, crossing links, Doppler, point-ahead, contact windows, terminals.
//! - [`latency`]: along-plane satellite path vs. terrestrial fiber propagation delay.
//! - [`routing`]: ground attachment and shortest-delay routes.
//! - [`cli`]: the `owsn` command-line tool.

pub mod cli;
pub mod config;
pub mod constellation;
pub mod error;
pub mod format;
pub mod geometry;
pub mod isl;
pub mod latency;
pub mod routing;

pub use constellation::{generate, presets, ConstellationSpec, SatelliteId, SatelliteState, Snapshot};
pub use error::{Error, Result};
pub use geometry::{EarthModel, Vec3, SPEED_OF_LIGHT_KM_S};
pub use isl::{build_topology, IslEdge, IslGraph, IslKind, Strategy, TopologyOptions};
