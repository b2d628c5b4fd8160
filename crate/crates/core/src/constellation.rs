//! Uniform circular-orbit constellations (Walker delta convention).
//!
//! At t = 0 plane 0's ascending node lies on the +x axis. Plane `p` has right
//! ascension `p * plane_spacing`; slot `s` of plane `p` starts at argument of
//! latitude `s * slot_spacing + p * F * 360 / (P * S)`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::fixed;
use crate::geometry::{EarthModel, Vec3};

fn default_raan_spread() -> f64 {
    360.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstellationSpec {
    pub inclination_deg: f64,
    pub altitude_km: f64,
    pub num_planes: u32,
    pub sats_per_plane: u32,
    /// Walker phasing numerator F, in `0..num_planes`.
    #[serde(default)]
    pub phasing_factor: u32,
    /// Total right-ascension span over which planes are spread.
    #[serde(default = "default_raan_spread")]
    pub raan_spread_deg: f64,
}

impl ConstellationSpec {
    /// Spec with zero phasing and planes spread over the full 360°.
    pub const fn new(inclination_deg: f64, altitude_km: f64, num_planes: u32, sats_per_plane: u32) -> Self {
        Self {
            inclination_deg,
            altitude_km,
            num_planes,
            sats_per_plane,
            phasing_factor: 0,
            raan_spread_deg: 360.0,
        }
    }

    pub fn with_phasing(mut self, phasing_factor: u32) -> Self {
        self.phasing_factor = phasing_factor;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.inclination_deg > 0.0 && self.inclination_deg <= 180.0) {
            return Err(Error::InvalidSpec(format!(
                "inclination {} must be in (0, 180]",
                self.inclination_deg
            )));
        }
        if !(self.altitude_km.is_finite() && self.altitude_km > 0.0) {
            return Err(Error::InvalidSpec(format!("altitude {} must be > 0", self.altitude_km)));
        }
        if self.num_planes == 0 || self.sats_per_plane == 0 {
            return Err(Error::InvalidSpec("plane and slot counts must be >= 1".into()));
        }
        if self.phasing_factor >= self.num_planes {
            return Err(Error::InvalidSpec(format!(
                "phasing factor {} must be < num_planes {}",
                self.phasing_factor, self.num_planes
            )));
        }
        if !(self.raan_spread_deg > 0.0 && self.raan_spread_deg <= 360.0) {
            return Err(Error::InvalidSpec(format!(
                "raan spread {} must be in (0, 360]",
                self.raan_spread_deg
            )));
        }
        Ok(())
    }

    pub fn total_satellites(&self) -> usize {
        self.num_planes as usize * self.sats_per_plane as usize
    }

    pub fn plane_spacing_deg(&self) -> f64 {
        self.raan_spread_deg / f64::from(self.num_planes)
    }

    pub fn slot_spacing_deg(&self) -> f64 {
        360.0 / f64::from(self.sats_per_plane)
    }

    /// Along-track offset between slot 0 of consecutive planes.
    pub fn phase_offset_deg(&self) -> f64 {
        f64::from(self.phasing_factor) * 360.0 / self.total_satellites() as f64
    }

    pub fn orbit_radius_km(&self, earth: &EarthModel) -> f64 {
        earth.radius_km + self.altitude_km
    }

    /// Mean motion of the circular orbit, rad/s.
    pub fn angular_rate(&self, earth: &EarthModel) -> f64 {
        (earth.gravitational_parameter_km3_s2 / self.orbit_radius_km(earth).powi(3)).sqrt()
    }

    pub fn orbital_speed_km_s(&self, earth: &EarthModel) -> f64 {
        (earth.gravitational_parameter_km3_s2 / self.orbit_radius_km(earth)).sqrt()
    }

    pub fn orbital_period_s(&self, earth: &EarthModel) -> f64 {
        TAU / self.angular_rate(earth)
    }

    /// Highest |latitude| any satellite reaches.
    pub fn max_latitude_deg(&self) -> f64 {
        self.inclination_deg.min(180.0 - self.inclination_deg)
    }

    pub fn raan_deg(&self, plane: u32) -> f64 {
        f64::from(plane) * self.plane_spacing_deg()
    }

    /// Argument of latitude of a slot at t = 0, degrees.
    pub fn initial_arg_latitude_deg(&self, id: SatelliteId) -> f64 {
        f64::from(id.slot) * self.slot_spacing_deg() + f64::from(id.plane) * self.phase_offset_deg()
    }

    pub fn contains(&self, id: SatelliteId) -> bool {
        id.plane < self.num_planes && id.slot < self.sats_per_plane
    }

    /// Position in the plane-major ordering used by [`generate`].
    pub fn index_of(&self, id: SatelliteId) -> Option<usize> {
        self.contains(id)
            .then(|| id.plane as usize * self.sats_per_plane as usize + id.slot as usize)
    }

    pub fn id_at(&self, index: usize) -> SatelliteId {
        let s = self.sats_per_plane as usize;
        SatelliteId::new((index / s) as u32, (index % s) as u32)
    }

    pub fn ids(&self) -> impl Iterator<Item = SatelliteId> + '_ {
        (0..self.num_planes).flat_map(move |p| (0..self.sats_per_plane).map(move |s| SatelliteId::new(p, s)))
    }

    /// State of one satellite at time `t_s`.
    pub fn state_of(&self, id: SatelliteId, earth: &EarthModel, t_s: f64) -> SatelliteState {
        let r = self.orbit_radius_km(earth);
        let w = self.angular_rate(earth);
        let raan = self.raan_deg(id.plane).to_radians();
        let inc = self.inclination_deg.to_radians();
        let u = self.initial_arg_latitude_deg(id).to_radians() + w * t_s;

        let (so, co) = raan.sin_cos();
        let (si, ci) = inc.sin_cos();
        let (su, cu) = u.sin_cos();
        let position = Vec3::new(r * (co * cu - so * su * ci), r * (so * cu + co * su * ci), r * su * si);
        let v = r * w;
        let velocity = Vec3::new(
            v * (-co * su - so * cu * ci),
            v * (-so * su + co * cu * ci),
            v * cu * si,
        );
        SatelliteState::new(id, position, velocity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SatelliteId {
    pub plane: u32,
    pub slot: u32,
}

impl SatelliteId {
    pub const fn new(plane: u32, slot: u32) -> Self {
        Self { plane, slot }
    }
}

impl fmt::Display for SatelliteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.plane, self.slot)
    }
}

impl std::str::FromStr for SatelliteId {
    type Err = Error;

    /// Parses `plane:slot`.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("satellite id '{s}' is not plane:slot")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("satellite id '{s}' is not plane:slot")))
        };
        Ok(SatelliteId::new(parse(p)?, parse(q)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteState {
    pub id: SatelliteId,
    pub position: Vec3,
    pub velocity: Vec3,
    /// Moving with increasing latitude (the northbound half of the constellation).
    pub ascending: bool,
}

impl SatelliteState {
    pub fn new(id: SatelliteId, position: Vec3, velocity: Vec3) -> Self {
        Self {
            id,
            position,
            velocity,
            ascending: velocity.z >= 0.0,
        }
    }

    /// Latitude-rate sign; the turnaround point counts as ascending.
    pub fn is_ascending(&self) -> bool {
        self.velocity.z >= 0.0
    }

    pub fn latitude_deg(&self) -> f64 {
        (self.position.z / self.position.norm()).asin().to_degrees()
    }

    /// Advances a circular-orbit state by `dt_s`, rotating position and
    /// velocity about the orbit normal at rate |v|/|r|.
    pub fn propagate(&self, dt_s: f64) -> SatelliteState {
        let r = self.position.norm();
        let normal = match self.position.cross(self.velocity).normalized() {
            Some(n) => n,
            None => return *self,
        };
        let angle = self.velocity.norm() / r * dt_s;
        let (s, c) = angle.sin_cos();
        let position = self.position * c + normal.cross(self.position) * s;
        let velocity = self.velocity * c + normal.cross(self.velocity) * s;
        SatelliteState::new(self.id, position, velocity)
    }
}

/// All satellite states at `t_s`, plane-major order.
pub fn generate(spec: &ConstellationSpec, earth: &EarthModel, t_s: f64) -> Result<Vec<SatelliteState>> {
    spec.validate()?;
    earth.validate()?;
    if !(t_s.is_finite() && t_s >= 0.0) {
        return Err(Error::domain(format!("time {t_s} must be >= 0")));
    }
    Ok(spec.ids().map(|id| spec.state_of(id, earth, t_s)).collect())
}

/// Constellation states at one instant together with the parameters that produced them.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub spec: ConstellationSpec,
    pub earth: EarthModel,
    pub time_s: f64,
    pub states: Vec<SatelliteState>,
}

impl Snapshot {
    pub fn generate(spec: ConstellationSpec, earth: EarthModel, time_s: f64) -> Result<Self> {
        let states = generate(&spec, &earth, time_s)?;
        Ok(Self {
            spec,
            earth,
            time_s,
            states,
        })
    }

    pub fn state(&self, id: SatelliteId) -> Result<&SatelliteState> {
        self.spec
            .index_of(id)
            .map(|i| &self.states[i])
            .ok_or(Error::UnknownNode(id))
    }

    /// Writes the snapshot CSV (6-decimal fixed point, `\n` line endings).
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "plane,slot,x_km,y_km,z_km,vx_km_s,vy_km_s,vz_km_s,ascending")?;
        for st in &self.states {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                st.id.plane,
                st.id.slot,
                fixed(st.position.x, 6),
                fixed(st.position.y, 6),
                fixed(st.position.z, 6),
                fixed(st.velocity.x, 6),
                fixed(st.velocity.y, 6),
                fixed(st.velocity.z, 6),
                st.ascending
            )?;
        }
        Ok(())
    }
}

/// Named constellations: SpaceX Starlink phase I (original and modified
/// authorization), the four phase II shells, and a 40 x 40 teaching example.
pub fn presets() -> BTreeMap<&'static str, ConstellationSpec> {
    BTreeMap::from([
        (
            "starlink-phase1-original",
            ConstellationSpec::new(53.0, 1_150.0, 32, 50),
        ),
        ("starlink-phase1-modified", ConstellationSpec::new(53.0, 550.0, 24, 66)),
        ("phase2-a", ConstellationSpec::new(53.8, 1_110.0, 32, 50)),
        ("phase2-b", ConstellationSpec::new(74.0, 1_130.0, 8, 50)),
        ("phase2-c", ConstellationSpec::new(81.0, 1_275.0, 5, 75)),
        ("phase2-d", ConstellationSpec::new(70.0, 1_325.0, 6, 75)),
        ("example-40x40", ConstellationSpec::new(53.0, 550.0, 40, 40)),
    ])
}

pub fn preset(name: &str) -> Result<ConstellationSpec> {
    presets()
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}
