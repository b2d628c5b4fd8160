//! C ABI over the `owsn` simulator.
//!
//! Every fallible function returns an [`OwsnStatus`] and writes results
//! through out-pointers. On failure a human-readable reason is available from
//! [`owsn_last_error_message`] on the same thread. Snapshots and graphs are
//! opaque handles released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use owsn::constellation::{preset, ConstellationSpec, SatelliteId, Snapshot};
use owsn::geometry::{arc_distance, chord_distance, max_isl_range, EarthModel};
use owsn::isl::{
    build_topology, contact_windows, doppler_shift, find_terminal, point_ahead_angle, IslGraph, IslKind, Strategy,
    TopologyOptions, WindowQuery,
};
use owsn::latency::{comparison_table, crossover, fiber_speed, MediumModel, UseCaseScenario};
use owsn::routing::{end_to_end, shortest_path, GroundPoint};
use owsn::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OwsnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Required links broken or no latency crossover.
    Infeasible = 3,
    /// Ground point outside the constellation's reach.
    Coverage = 4,
    NoPath = 5,
    /// Output buffer too small; the required size is still reported.
    BufferTooSmall = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OwsnStrategy {
    PlusGrid = 0,
    PlusGridCrossing = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OwsnLinkKind {
    IntraPlane = 0,
    InterPlane = 1,
    Crossing = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OwsnEarthModel {
    pub radius_km: f64,
    pub occlusion_altitude_km: f64,
    pub mu_km3_s2: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OwsnConstellation {
    pub inclination_deg: f64,
    pub altitude_km: f64,
    pub num_planes: u32,
    pub sats_per_plane: u32,
    pub phasing_factor: u32,
    pub raan_spread_deg: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OwsnSatId {
    pub plane: u32,
    pub slot: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OwsnSatellite {
    pub id: OwsnSatId,
    pub position_km: [f64; 3],
    pub velocity_km_s: [f64; 3],
    pub ascending: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OwsnEdge {
    pub a: OwsnSatId,
    pub b: OwsnSatId,
    pub kind: OwsnLinkKind,
    pub distance_km: f64,
}

/// Idealized latency comparison scenario.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OwsnUseCase {
    pub altitude_km: f64,
    pub earth_radius_km: f64,
    pub per_hop_theta_deg: f64,
    pub ingress_egress_km: f64,
    pub fiber_refractive_index: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OwsnLatencyRow {
    pub hops: u32,
    pub theta_deg: f64,
    pub sat_hop_distance_km: f64,
    pub sat_end_to_end_km: f64,
    pub sat_latency_ms: f64,
    pub terr_distance_km: f64,
    pub terr_latency_ms: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OwsnContactWindow {
    pub geometric_start_s: f64,
    pub start_s: f64,
    pub end_s: f64,
    pub min_distance_km: f64,
    pub max_abs_doppler_hz: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OwsnRoute {
    pub ingress: OwsnSatId,
    pub egress: OwsnSatId,
    pub isl_hops: usize,
    pub uplink_km: f64,
    pub downlink_km: f64,
    pub satellite_km: f64,
    pub satellite_latency_ms: f64,
    pub terrestrial_km: f64,
    pub terrestrial_latency_ms: f64,
}

/// Opaque constellation snapshot.
pub struct OwsnSnapshot {
    inner: Snapshot,
}

/// Opaque ISL graph.
pub struct OwsnGraph {
    inner: IslGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> OwsnStatus {
    match err {
        Error::InfeasibleTopology(_) | Error::NoCrossover { .. } => OwsnStatus::Infeasible,
        Error::Coverage { .. } | Error::NoVisibleSatellite { .. } => OwsnStatus::Coverage,
        Error::NoPath { .. } => OwsnStatus::NoPath,
        _ => OwsnStatus::InvalidArgument,
    }
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), OwsnStatus>) -> OwsnStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => OwsnStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal error: panic in owsn");
            OwsnStatus::Internal
        }
    }
}

fn check<T>(r: owsn::Result<T>) -> Result<T, OwsnStatus> {
    r.map_err(|e| {
        set_last_error(e.to_string());
        status_of(&e)
    })
}

fn null_pointer(what: &str) -> OwsnStatus {
    set_last_error(format!("null pointer: {what}"));
    OwsnStatus::NullPointer
}

unsafe fn read<'a, T>(p: *const T, what: &str) -> Result<&'a T, OwsnStatus> {
    p.as_ref().ok_or_else(|| null_pointer(what))
}

unsafe fn write<T>(p: *mut T, value: T, what: &str) -> Result<(), OwsnStatus> {
    if p.is_null() {
        return Err(null_pointer(what));
    }
    p.write(value);
    Ok(())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, OwsnStatus> {
    if p.is_null() {
        return Err(null_pointer(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_last_error(format!("{what} is not valid UTF-8"));
        OwsnStatus::InvalidArgument
    })
}

/// Copies `items` into a caller buffer of `capacity` entries and reports the full count.
unsafe fn fill<T: Copy>(items: &[T], out: *mut T, capacity: usize, count: *mut usize) -> Result<(), OwsnStatus> {
    write(count, items.len(), "count")?;
    if items.len() > capacity {
        set_last_error(format!("buffer holds {capacity} entries, {} needed", items.len()));
        return Err(OwsnStatus::BufferTooSmall);
    }
    if !items.is_empty() {
        if out.is_null() {
            return Err(null_pointer("out"));
        }
        ptr::copy_nonoverlapping(items.as_ptr(), out, items.len());
    }
    Ok(())
}

impl From<EarthModel> for OwsnEarthModel {
    fn from(e: EarthModel) -> Self {
        Self {
            radius_km: e.radius_km,
            occlusion_altitude_km: e.occlusion_altitude_km,
            mu_km3_s2: e.gravitational_parameter_km3_s2,
        }
    }
}

impl OwsnEarthModel {
    fn to_core(self) -> owsn::Result<EarthModel> {
        EarthModel::new(self.radius_km, self.occlusion_altitude_km, self.mu_km3_s2)
    }
}

impl From<ConstellationSpec> for OwsnConstellation {
    fn from(s: ConstellationSpec) -> Self {
        Self {
            inclination_deg: s.inclination_deg,
            altitude_km: s.altitude_km,
            num_planes: s.num_planes,
            sats_per_plane: s.sats_per_plane,
            phasing_factor: s.phasing_factor,
            raan_spread_deg: s.raan_spread_deg,
        }
    }
}

impl OwsnConstellation {
    fn to_core(self) -> owsn::Result<ConstellationSpec> {
        let spec = ConstellationSpec {
            raan_spread_deg: self.raan_spread_deg,
            ..ConstellationSpec::new(
                self.inclination_deg,
                self.altitude_km,
                self.num_planes,
                self.sats_per_plane,
            )
            .with_phasing(self.phasing_factor)
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<SatelliteId> for OwsnSatId {
    fn from(id: SatelliteId) -> Self {
        Self {
            plane: id.plane,
            slot: id.slot,
        }
    }
}

impl From<OwsnSatId> for SatelliteId {
    fn from(id: OwsnSatId) -> Self {
        SatelliteId::new(id.plane, id.slot)
    }
}

impl From<IslKind> for OwsnLinkKind {
    fn from(k: IslKind) -> Self {
        match k {
            IslKind::IntraPlane => Self::IntraPlane,
            IslKind::InterPlane => Self::InterPlane,
            IslKind::Crossing => Self::Crossing,
        }
    }
}

impl OwsnUseCase {
    fn to_core(self) -> owsn::Result<UseCaseScenario> {
        let s = UseCaseScenario {
            altitude_km: self.altitude_km,
            earth_radius_km: self.earth_radius_km,
            per_hop_theta_deg: self.per_hop_theta_deg,
            ingress_egress_km: self.ingress_egress_km,
            fiber: MediumModel::new("fiber", self.fiber_refractive_index)?,
            ..UseCaseScenario::default()
        };
        s.validate()?;
        Ok(s)
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn owsn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Reason for the last failed call on this thread; empty if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn owsn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_chord_distance(theta_deg: f64, radius_km: f64, out: *mut f64) -> OwsnStatus {
    guard(|| write(out, check(chord_distance(theta_deg, radius_km))?, "out"))
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_arc_distance(theta_deg: f64, radius_km: f64, out: *mut f64) -> OwsnStatus {
    guard(|| write(out, check(arc_distance(theta_deg, radius_km))?, "out"))
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_fiber_speed(refractive_index: f64, out: *mut f64) -> OwsnStatus {
    guard(|| write(out, check(fiber_speed(refractive_index))?, "out"))
}

/// Earth model preset by name: `visibility` or `use-case`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_earth_preset(name: *const c_char, out: *mut OwsnEarthModel) -> OwsnStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let earth = EarthModel::preset(name).ok_or_else(|| {
            set_last_error(format!("unknown earth model '{name}'"));
            OwsnStatus::InvalidArgument
        })?;
        write(out, earth.into(), "out")
    })
}

/// # Safety
/// `earth` must point to a valid model; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_max_isl_range(
    altitude_km: f64,
    earth: *const OwsnEarthModel,
    out: *mut f64,
) -> OwsnStatus {
    guard(|| {
        let earth = check(read(earth, "earth")?.to_core())?;
        write(out, check(max_isl_range(altitude_km, &earth))?, "out")
    })
}

/// Constellation preset by name, e.g. `starlink-phase1-modified`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_constellation_preset(name: *const c_char, out: *mut OwsnConstellation) -> OwsnStatus {
    guard(|| {
        let spec = check(preset(read_str(name, "name")?))?;
        write(out, spec.into(), "out")
    })
}

/// The default latency comparison scenario (550 km, 5.45 deg per hop, 1,100 km ground legs, n = 1.4675).
#[no_mangle]
pub extern "C" fn owsn_use_case_default() -> OwsnUseCase {
    let s = UseCaseScenario::default();
    OwsnUseCase {
        altitude_km: s.altitude_km,
        earth_radius_km: s.earth_radius_km,
        per_hop_theta_deg: s.per_hop_theta_deg,
        ingress_egress_km: s.ingress_egress_km,
        fiber_refractive_index: s.fiber.refractive_index,
    }
}

/// Rows 1..=`max_hops` of the satellite vs fiber comparison.
/// `count` receives `max_hops`; fails with `BUFFER_TOO_SMALL` if `capacity` is less.
///
/// # Safety
/// `scenario` must be valid; `out` must hold `capacity` rows; `count` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_latency_table(
    scenario: *const OwsnUseCase,
    max_hops: u32,
    out: *mut OwsnLatencyRow,
    capacity: usize,
    count: *mut usize,
) -> OwsnStatus {
    guard(|| {
        let s = check(read(scenario, "scenario")?.to_core())?;
        let rows: Vec<OwsnLatencyRow> = check(comparison_table(max_hops, &s))?
            .into_iter()
            .map(|r| OwsnLatencyRow {
                hops: r.hops,
                theta_deg: r.theta_deg,
                sat_hop_distance_km: r.sat_hop_distance_km,
                sat_end_to_end_km: r.sat_end_to_end_km,
                sat_latency_ms: r.sat_latency_ms,
                terr_distance_km: r.terr_distance_km,
                terr_latency_ms: r.terr_latency_ms,
            })
            .collect();
        fill(&rows, out, capacity, count)
    })
}

/// # Safety
/// `scenario` must be valid; `hops` and `terrestrial_km` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn owsn_crossover(
    scenario: *const OwsnUseCase,
    hops: *mut u32,
    terrestrial_km: *mut f64,
) -> OwsnStatus {
    guard(|| {
        let s = check(read(scenario, "scenario")?.to_core())?;
        let c = check(crossover(&s))?;
        write(hops, c.first_winning_hops, "hops")?;
        write(terrestrial_km, c.terrestrial_distance_km, "terrestrial_km")
    })
}

/// # Safety
/// `spec` and `earth` must be valid; `out` must be valid for a write.
/// Release the handle with [`owsn_snapshot_free`].
#[no_mangle]
pub unsafe extern "C" fn owsn_snapshot_new(
    spec: *const OwsnConstellation,
    earth: *const OwsnEarthModel,
    time_s: f64,
    out: *mut *mut OwsnSnapshot,
) -> OwsnStatus {
    guard(|| {
        let spec = check(read(spec, "spec")?.to_core())?;
        let earth = check(read(earth, "earth")?.to_core())?;
        let snap = check(Snapshot::generate(spec, earth, time_s))?;
        write(out, Box::into_raw(Box::new(OwsnSnapshot { inner: snap })), "out")
    })
}

/// # Safety
/// `snapshot` must come from [`owsn_snapshot_new`] and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn owsn_snapshot_free(snapshot: *mut OwsnSnapshot) {
    if !snapshot.is_null() {
        drop(Box::from_raw(snapshot));
    }
}

/// Number of satellites; 0 for NULL.
///
/// # Safety
/// `snapshot` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn owsn_snapshot_len(snapshot: *const OwsnSnapshot) -> usize {
    snapshot.as_ref().map_or(0, |s| s.inner.states.len())
}

/// Satellite `index` in plane-major order.
///
/// # Safety
/// `snapshot` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_snapshot_get(
    snapshot: *const OwsnSnapshot,
    index: usize,
    out: *mut OwsnSatellite,
) -> OwsnStatus {
    guard(|| {
        let snap = &read(snapshot, "snapshot")?.inner;
        let st = snap.states.get(index).ok_or_else(|| {
            set_last_error(format!("index {index} out of range ({} satellites)", snap.states.len()));
            OwsnStatus::InvalidArgument
        })?;
        let (p, v) = (st.position, st.velocity);
        let sat = OwsnSatellite {
            id: st.id.into(),
            position_km: [p.x, p.y, p.z],
            velocity_km_s: [v.x, v.y, v.z],
            ascending: st.ascending,
        };
        write(out, sat, "out")
    })
}

/// Builds the ISL graph for a snapshot. `terminal` may be NULL for no terminal range limit.
///
/// # Safety
/// `snapshot` must be a live handle; `terminal` NULL or NUL-terminated; `out` valid for a write.
/// Release the handle with [`owsn_graph_free`].
#[no_mangle]
pub unsafe extern "C" fn owsn_graph_build(
    snapshot: *const OwsnSnapshot,
    strategy: OwsnStrategy,
    terminal: *const c_char,
    out: *mut *mut OwsnGraph,
) -> OwsnStatus {
    guard(|| {
        let snap = &read(snapshot, "snapshot")?.inner;
        let mut options = TopologyOptions::new(match strategy {
            OwsnStrategy::PlusGrid => Strategy::PlusGrid,
            OwsnStrategy::PlusGridCrossing => Strategy::PlusGridCrossing,
        });
        if !terminal.is_null() {
            options.terminal = Some(check(find_terminal(read_str(terminal, "terminal")?))?);
        }
        let graph = check(build_topology(snap, &options))?;
        write(out, Box::into_raw(Box::new(OwsnGraph { inner: graph })), "out")
    })
}

/// # Safety
/// `graph` must come from [`owsn_graph_build`] and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn owsn_graph_free(graph: *mut OwsnGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of links; 0 for NULL.
///
/// # Safety
/// `graph` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn owsn_graph_edge_count(graph: *const OwsnGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// # Safety
/// `graph` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_graph_edge(graph: *const OwsnGraph, index: usize, out: *mut OwsnEdge) -> OwsnStatus {
    guard(|| {
        let g = &read(graph, "graph")?.inner;
        let e = g.edges.get(index).ok_or_else(|| {
            set_last_error(format!("index {index} out of range ({} links)", g.edges.len()));
            OwsnStatus::InvalidArgument
        })?;
        let edge = OwsnEdge {
            a: e.a.into(),
            b: e.b.into(),
            kind: e.kind.into(),
            distance_km: e.distance_km,
        };
        write(out, edge, "out")
    })
}

/// Shortest total-distance path between two satellites. Returns `NO_PATH` when unreachable.
/// `hops` receives the number of links on the path; either out-pointer may be NULL.
///
/// # Safety
/// `graph` must be a live handle; non-NULL out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn owsn_graph_shortest_path(
    graph: *const OwsnGraph,
    from: OwsnSatId,
    to: OwsnSatId,
    distance_km: *mut f64,
    hops: *mut usize,
) -> OwsnStatus {
    guard(|| {
        let g = &read(graph, "graph")?.inner;
        let (a, b) = (from.into(), to.into());
        let path = check(shortest_path(g, a, b))?;
        let path = check(path.ok_or(Error::NoPath { from: a, to: b }))?;
        if !distance_km.is_null() {
            distance_km.write(path.total_distance_km);
        }
        if !hops.is_null() {
            hops.write(path.isl_hops());
        }
        Ok(())
    })
}

/// Ground-to-ground route: nearest satellite at each end, shortest ISL path,
/// and the fiber great-circle comparison. `min_elevation_deg` < 0 disables the elevation mask.
///
/// # Safety
/// `graph` and `snapshot` must be live handles built together; `scenario` valid; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_route(
    graph: *const OwsnGraph,
    snapshot: *const OwsnSnapshot,
    scenario: *const OwsnUseCase,
    from_lat_deg: f64,
    from_lon_deg: f64,
    to_lat_deg: f64,
    to_lon_deg: f64,
    min_elevation_deg: f64,
    out: *mut OwsnRoute,
) -> OwsnStatus {
    guard(|| {
        let g = &read(graph, "graph")?.inner;
        let snap = &read(snapshot, "snapshot")?.inner;
        let s = check(read(scenario, "scenario")?.to_core())?;
        let from = check(GroundPoint::new(from_lat_deg, from_lon_deg))?;
        let to = check(GroundPoint::new(to_lat_deg, to_lon_deg))?;
        let mask = (min_elevation_deg >= 0.0).then_some(min_elevation_deg);
        let r = check(end_to_end(&from, &to, g, snap, &s, mask))?;
        let route = OwsnRoute {
            ingress: r.route.ingress.into(),
            egress: r.route.egress.into(),
            isl_hops: r.route.isl_hops(),
            uplink_km: r.uplink_km,
            downlink_km: r.downlink_km,
            satellite_km: r.satellite_km,
            satellite_latency_ms: r.satellite_latency_ms,
            terrestrial_km: r.terrestrial_km,
            terrestrial_latency_ms: r.terrestrial_latency_ms,
        };
        write(out, route, "out")
    })
}

unsafe fn pair_states<'a>(
    snapshot: *const OwsnSnapshot,
    a: OwsnSatId,
    b: OwsnSatId,
) -> Result<(&'a owsn::SatelliteState, &'a owsn::SatelliteState), OwsnStatus> {
    let snap = &read(snapshot, "snapshot")?.inner;
    Ok((check(snap.state(a.into()))?, check(snap.state(b.into()))?))
}

/// Doppler shift in Hz seen by `b` for a carrier sent from `a` at the snapshot epoch.
///
/// # Safety
/// `snapshot` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_doppler_shift(
    snapshot: *const OwsnSnapshot,
    a: OwsnSatId,
    b: OwsnSatId,
    carrier_hz: f64,
    out: *mut f64,
) -> OwsnStatus {
    guard(|| {
        let (sa, sb) = pair_states(snapshot, a, b)?;
        write(out, check(doppler_shift(sa, sb, carrier_hz))?, "out")
    })
}

/// Point-ahead angle in radians at the snapshot epoch.
///
/// # Safety
/// `snapshot` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_point_ahead_angle(
    snapshot: *const OwsnSnapshot,
    a: OwsnSatId,
    b: OwsnSatId,
    out: *mut f64,
) -> OwsnStatus {
    guard(|| {
        let (sa, sb) = pair_states(snapshot, a, b)?;
        write(out, check(point_ahead_angle(sa, sb))?, "out")
    })
}

/// Contact windows between `a` and `b` over `[0, horizon_s]`, sampled every `step_s`.
/// `count` receives the number of windows; fails with `BUFFER_TOO_SMALL` if `capacity` is less.
///
/// # Safety
/// `spec` and `earth` must be valid; `out` must hold `capacity` entries; `count` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn owsn_contact_windows(
    spec: *const OwsnConstellation,
    earth: *const OwsnEarthModel,
    a: OwsnSatId,
    b: OwsnSatId,
    horizon_s: f64,
    step_s: f64,
    setup_time_s: f64,
    out: *mut OwsnContactWindow,
    capacity: usize,
    count: *mut usize,
) -> OwsnStatus {
    guard(|| {
        let spec = check(read(spec, "spec")?.to_core())?;
        let earth = check(read(earth, "earth")?.to_core())?;
        let query = WindowQuery {
            setup_time_s,
            ..WindowQuery::new(horizon_s, step_s)
        };
        let windows: Vec<OwsnContactWindow> = check(contact_windows(a.into(), b.into(), &spec, &earth, &query))?
            .into_iter()
            .map(|w| OwsnContactWindow {
                geometric_start_s: w.geometric_start_s,
                start_s: w.start_s,
                end_s: w.end_s,
                min_distance_km: w.min_distance_km,
                max_abs_doppler_hz: w.max_abs_doppler_hz,
            })
            .collect();
        fill(&windows, out, capacity, count)
    })
}
