//! Relative link kinematics: Doppler shift, point-ahead angle and contact windows.
//!
//! Doppler and point-ahead use first-order kinematics (v << c).

use crate::constellation::{ConstellationSpec, SatelliteId, SatelliteState};
use crate::error::{Error, Result};
use crate::geometry::{line_of_sight, max_isl_range, EarthModel, Vec3, SPEED_OF_LIGHT_KM_S};

use super::terminal::TerminalSpec;

/// Optical carrier at 1,550 nm, Hz.
pub const CARRIER_1550_NM_HZ: f64 = 299_792_458.0 / 1_550e-9;

/// Link acquisition time assumed when none is given, seconds.
pub const DEFAULT_SETUP_TIME_S: f64 = 10.0;

/// Window boundaries are bisected down to this resolution, seconds.
pub const WINDOW_RESOLUTION_S: f64 = 0.1;

fn line_of_sight_vector(a: &SatelliteState, b: &SatelliteState) -> Result<(Vec3, f64)> {
    let d = b.position - a.position;
    let range = d.norm();
    if range == 0.0 {
        return Err(Error::DegenerateGeometry("coincident satellite positions"));
    }
    Ok((d * (1.0 / range), range))
}

/// d|p_b - p_a|/dt from instantaneous velocities, km/s. Negative when closing.
pub fn range_rate(a: &SatelliteState, b: &SatelliteState) -> Result<f64> {
    let (u, _) = line_of_sight_vector(a, b)?;
    Ok((b.velocity - a.velocity).dot(u))
}

/// Received-frequency offset for a carrier of `carrier_hz`; positive when closing.
pub fn doppler_shift(a: &SatelliteState, b: &SatelliteState, carrier_hz: f64) -> Result<f64> {
    Ok(-carrier_hz * range_rate(a, b)? / SPEED_OF_LIGHT_KM_S)
}

/// Two-way point-ahead angle 2|v_perp|/c, radians.
pub fn point_ahead_angle(a: &SatelliteState, b: &SatelliteState) -> Result<f64> {
    let (u, _) = line_of_sight_vector(a, b)?;
    let w = b.velocity - a.velocity;
    let perp = w - u * w.dot(u);
    Ok(2.0 * perp.norm() / SPEED_OF_LIGHT_KM_S)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowQuery {
    pub horizon_s: f64,
    pub step_s: f64,
    pub terminal: Option<TerminalSpec>,
    pub setup_time_s: f64,
    pub carrier_hz: f64,
}

impl WindowQuery {
    pub fn new(horizon_s: f64, step_s: f64) -> Self {
        Self {
            horizon_s,
            step_s,
            terminal: None,
            setup_time_s: DEFAULT_SETUP_TIME_S,
            carrier_hz: CARRIER_1550_NM_HZ,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon_s.is_finite() && self.horizon_s > 0.0) {
            return Err(Error::domain(format!("horizon {} must be > 0", self.horizon_s)));
        }
        if !(self.step_s > 0.0 && self.step_s <= self.horizon_s) {
            return Err(Error::domain(format!("step {} must be in (0, horizon]", self.step_s)));
        }
        if !(self.setup_time_s.is_finite() && self.setup_time_s >= 0.0) {
            return Err(Error::domain(format!("setup time {} must be >= 0", self.setup_time_s)));
        }
        if let Some(t) = &self.terminal {
            t.validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContactWindow {
    /// When the pair first becomes geometrically linkable.
    pub geometric_start_s: f64,
    /// First usable instant, after link setup.
    pub start_s: f64,
    pub end_s: f64,
    pub min_distance_km: f64,
    pub max_abs_doppler_hz: f64,
}

impl ContactWindow {
    pub fn duration_s(&self) -> f64 {
        self.end_s - self.start_s
    }
}

/// Range/visibility predicate for one pair of satellites.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LinkLimit {
    earth: EarthModel,
    max_km: f64,
}

impl LinkLimit {
    pub(crate) fn new(altitude_km: f64, earth: &EarthModel, terminal: Option<&TerminalSpec>) -> Result<Self> {
        let visible = max_isl_range(altitude_km, earth)?;
        let max_km = terminal.map_or(visible, |t| visible.min(t.max_link_km));
        Ok(Self { earth: *earth, max_km })
    }

    pub(crate) fn linkable(&self, a: Vec3, b: Vec3) -> bool {
        a.distance(b) <= self.max_km && line_of_sight(a, b, &self.earth).unwrap_or(false)
    }
}

/// Time in `[lo, hi]` where `linkable` flips, assuming it holds at `lo` iff `lo_in`.
/// Returns the bracket side on which the link holds.
fn refine(mut lo: f64, mut hi: f64, lo_in: bool, linkable: impl Fn(f64) -> bool) -> f64 {
    while hi - lo > WINDOW_RESOLUTION_S {
        let mid = 0.5 * (lo + hi);
        if linkable(mid) == lo_in {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo_in {
        lo
    } else {
        hi
    }
}

/// Windows for a pair whose states at time 0 of the scan are `a0`, `b0`.
pub(crate) fn scan_windows(
    a0: &SatelliteState,
    b0: &SatelliteState,
    limit: &LinkLimit,
    query: &WindowQuery,
) -> Result<Vec<ContactWindow>> {
    let linkable = |t: f64| limit.linkable(a0.propagate(t).position, b0.propagate(t).position);
    let sample = |t: f64| -> (f64, f64) {
        let (a, b) = (a0.propagate(t), b0.propagate(t));
        let d = a.position.distance(b.position);
        let f = doppler_shift(&a, &b, query.carrier_hz).map_or(0.0, f64::abs);
        (d, f)
    };

    let mut windows = Vec::new();
    let mut open: Option<(f64, f64, f64)> = None; // (start, min distance, max |doppler|)
    let mut prev_t = 0.0;
    let mut k = 0u64;
    loop {
        let t = k as f64 * query.step_s;
        if t >= query.horizon_s {
            break;
        }
        let inside = linkable(t);
        match (&mut open, inside) {
            (None, true) => {
                let start = if k == 0 {
                    0.0
                } else {
                    refine(prev_t, t, false, linkable)
                };
                let (d0, f0) = sample(start);
                let (d, f) = sample(t);
                open = Some((start, d0.min(d), f0.max(f)));
            }
            (Some((_, dmin, fmax)), true) => {
                let (d, f) = sample(t);
                *dmin = dmin.min(d);
                *fmax = fmax.max(f);
            }
            (Some((start, dmin, fmax)), false) => {
                let end = refine(prev_t, t, true, linkable);
                let (d, f) = sample(end);
                windows.push((*start, end, dmin.min(d), fmax.max(f)));
                open = None;
            }
            (None, false) => {}
        }
        prev_t = t;
        k += 1;
    }
    if let Some((start, dmin, fmax)) = open {
        let end = if linkable(query.horizon_s) {
            query.horizon_s
        } else {
            refine(prev_t, query.horizon_s, true, linkable)
        };
        let (d, f) = sample(end);
        windows.push((start, end, dmin.min(d), fmax.max(f)));
    }

    Ok(windows
        .into_iter()
        .filter(|&(start, end, _, _)| end - start > query.setup_time_s)
        .map(|(start, end, dmin, fmax)| ContactWindow {
            geometric_start_s: start,
            start_s: start + query.setup_time_s,
            end_s: end,
            min_distance_km: dmin,
            max_abs_doppler_hz: fmax,
        })
        .collect())
}

/// Intervals in `[0, horizon)` during which two satellites of `spec` can hold
/// a laser link, limited by Earth occlusion, the grazing range and optionally a
/// terminal's reach.
pub fn contact_windows(
    a: SatelliteId,
    b: SatelliteId,
    spec: &ConstellationSpec,
    earth: &EarthModel,
    query: &WindowQuery,
) -> Result<Vec<ContactWindow>> {
    spec.validate()?;
    query.validate()?;
    for id in [a, b] {
        if !spec.contains(id) {
            return Err(Error::UnknownNode(id));
        }
    }
    if a == b {
        return Err(Error::DegenerateGeometry("a satellite cannot link to itself"));
    }
    let limit = LinkLimit::new(spec.altitude_km, earth, query.terminal.as_ref())?;
    scan_windows(
        &spec.state_of(a, earth, 0.0),
        &spec.state_of(b, earth, 0.0),
        &limit,
        query,
    )
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;
    use crate::constellation::{generate, preset};
    use crate::isl::terminal::find_terminal;

    const EARTH: EarthModel = EarthModel::VISIBILITY;

    fn state(p: Vec3, v: Vec3) -> SatelliteState {
        SatelliteState::new(SatelliteId::new(0, 0), p, v)
    }

    #[test]
    fn same_plane_neighbors_have_no_doppler() {
        let spec = preset("starlink-phase1-modified").unwrap();
        let states = generate(&spec, &EARTH, 1_234.0).unwrap();
        let f = doppler_shift(&states[0], &states[1], CARRIER_1550_NM_HZ).unwrap();
        assert!(f.abs() < 1e-3, "{f}");
    }

    #[test]
    fn head_on_doppler() {
        let a = state(Vec3::new(0.0, 0.0, 0.0), Vec3::new(7.5, 0.0, 0.0));
        let b = state(Vec3::new(1_000.0, 0.0, 0.0), Vec3::new(-7.5, 0.0, 0.0));
        let f = doppler_shift(&a, &b, 193.5e12).unwrap();
        let expected = 15.0 / 299_792.458 * 193.5e12;
        assert_relative_eq!(f, expected, max_relative = 1e-12);
        assert!((f - 9.68e9).abs() < 0.01e9);
        assert_eq!(f, doppler_shift(&b, &a, 193.5e12).unwrap());
        // receding flips the sign
        let b2 = state(b.position, Vec3::new(7.5 + 15.0, 0.0, 0.0));
        assert!(doppler_shift(&a, &b2, 193.5e12).unwrap() < 0.0);
    }

    #[test]
    fn point_ahead_examples() {
        let a = state(Vec3::new(0.0, 0.0, 0.0), Vec3::ZERO);
        let radial = state(Vec3::new(500.0, 0.0, 0.0), Vec3::new(3.0, 0.0, 0.0));
        assert_eq!(point_ahead_angle(&a, &radial).unwrap(), 0.0);
        let transverse = state(Vec3::new(500.0, 0.0, 0.0), Vec3::new(0.0, 15.0, 0.0));
        let paa = point_ahead_angle(&a, &transverse).unwrap();
        assert_relative_eq!(paa, 2.0 * 15.0 / 299_792.458, max_relative = 1e-12);
        assert_relative_eq!(paa, 1.0007e-4, max_relative = 1e-4);
        assert_eq!(paa, point_ahead_angle(&transverse, &a).unwrap());
    }

    #[test]
    fn coincident_positions_are_rejected() {
        let a = state(Vec3::new(7_000.0, 0.0, 0.0), Vec3::ZERO);
        assert!(matches!(doppler_shift(&a, &a, 1.0), Err(Error::DegenerateGeometry(_))));
        assert!(matches!(point_ahead_angle(&a, &a), Err(Error::DegenerateGeometry(_))));
    }

    #[test]
    fn permanent_window_for_ring_neighbors() {
        let spec = preset("starlink-phase1-modified").unwrap();
        let mut q = WindowQuery::new(3_000.0, 30.0);
        let w = contact_windows(SatelliteId::new(5, 3), SatelliteId::new(5, 4), &spec, &EARTH, &q).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!((w[0].geometric_start_s, w[0].end_s), (0.0, 3_000.0));
        assert_eq!(w[0].start_s, DEFAULT_SETUP_TIME_S);
        q.setup_time_s = 0.0;
        let w = contact_windows(SatelliteId::new(5, 3), SatelliteId::new(5, 4), &spec, &EARTH, &q).unwrap();
        assert_eq!(w[0].start_s, w[0].geometric_start_s);
    }

    #[test]
    fn query_validation() {
        let spec = preset("example-40x40").unwrap();
        let (a, b) = (SatelliteId::new(0, 0), SatelliteId::new(0, 1));
        for q in [
            WindowQuery::new(0.0, 1.0),
            WindowQuery::new(10.0, 0.0),
            WindowQuery::new(10.0, 11.0),
        ] {
            assert!(contact_windows(a, b, &spec, &EARTH, &q).is_err());
        }
        let q = WindowQuery {
            setup_time_s: -1.0,
            ..WindowQuery::new(10.0, 1.0)
        };
        assert!(contact_windows(a, b, &spec, &EARTH, &q).is_err());
        assert!(contact_windows(a, SatelliteId::new(40, 0), &spec, &EARTH, &WindowQuery::new(10.0, 1.0)).is_err());
        assert!(contact_windows(a, a, &spec, &EARTH, &WindowQuery::new(10.0, 1.0)).is_err());
    }

    #[test]
    fn short_windows_are_dropped_by_setup_time() {
        let spec = preset("starlink-phase1-modified").unwrap();
        let period = spec.orbital_period_s(&EARTH);
        let (a, b) = (SatelliteId::new(0, 0), SatelliteId::new(12, 30));
        let mut q = WindowQuery::new(period, 10.0);
        q.setup_time_s = 0.0;
        let all = contact_windows(a, b, &spec, &EARTH, &q).unwrap();
        assert!(!all.is_empty());
        let longest = all.iter().map(|w| w.end_s - w.geometric_start_s).fold(0.0, f64::max);
        q.setup_time_s = longest + 1.0;
        assert!(contact_windows(a, b, &spec, &EARTH, &q).unwrap().is_empty());
    }

    #[test]
    fn terminal_range_can_bind() {
        let spec = preset("starlink-phase1-modified").unwrap();
        let period = spec.orbital_period_s(&EARTH);
        let (a, b) = (SatelliteId::new(0, 0), SatelliteId::new(12, 30));
        let q = WindowQuery::new(period, 10.0);
        let open = contact_windows(a, b, &spec, &EARTH, &q).unwrap();
        let short = WindowQuery {
            terminal: Some(find_terminal("1550 nm LCT").unwrap()),
            ..q.clone()
        };
        let limited = contact_windows(a, b, &spec, &EARTH, &short).unwrap();
        let total = |w: &[ContactWindow]| w.iter().map(|w| w.end_s - w.geometric_start_s).sum::<f64>();
        assert!(total(&limited) < total(&open));
        for w in &limited {
            assert!(w.min_distance_km <= 2_500.0);
        }
    }
}
