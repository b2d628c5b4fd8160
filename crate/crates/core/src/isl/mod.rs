//! Laser inter-satellite link topologies.
//!
//! A +grid gives every satellite four permanent links: front and back in its
//! own plane, and one partner in each adjacent plane. The optional fifth link
//! reaches a satellite in a crossing plane and only lasts while that pair stays
//! in range.

pub mod dynamics;
pub mod mesh;
pub mod terminal;

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constellation::{ConstellationSpec, SatelliteId, SatelliteState, Snapshot};
use crate::error::{EdgeViolation, Error, Result, ViolationReason};
use crate::format::fixed;
use crate::geometry::{line_of_sight, EarthModel};

pub use dynamics::{
    contact_windows, doppler_shift, point_ahead_angle, range_rate, ContactWindow, WindowQuery, CARRIER_1550_NM_HZ,
    DEFAULT_SETUP_TIME_S,
};
pub use mesh::{classify_meshes, MeshClass, MeshReport};
pub use terminal::{feasible_terminals, find_terminal, terminal_catalog, TerminalSpec};

use dynamics::{scan_windows, LinkLimit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IslKind {
    IntraPlane,
    InterPlane,
    Crossing,
}

impl IslKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IslKind::IntraPlane => "intra_plane",
            IslKind::InterPlane => "inter_plane",
            IslKind::Crossing => "crossing",
        }
    }
}

impl fmt::Display for IslKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IslKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "intra_plane" => Ok(IslKind::IntraPlane),
            "inter_plane" => Ok(IslKind::InterPlane),
            "crossing" => Ok(IslKind::Crossing),
            _ => Err(Error::Parse(format!("unknown link kind '{s}'"))),
        }
    }
}

/// Undirected link; endpoints are stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IslEdge {
    pub a: SatelliteId,
    pub b: SatelliteId,
    pub kind: IslKind,
    pub distance_km: f64,
}

impl IslEdge {
    fn new(x: SatelliteId, y: SatelliteId, kind: IslKind, distance_km: f64) -> Self {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        Self {
            a,
            b,
            kind,
            distance_km,
        }
    }

    pub fn other(&self, id: SatelliteId) -> SatelliteId {
        if id == self.a {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[default]
    PlusGrid,
    PlusGridCrossing,
}

/// How a satellite picks its partner in an adjacent plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartnerRule {
    /// Slot whose argument of latitude is closest (ties go to the later slot).
    #[default]
    Nearest,
    SameSlot,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopologyOptions {
    pub strategy: Strategy,
    pub partner_rule: PartnerRule,
    pub terminal: Option<TerminalSpec>,
    /// Contact-time look-ahead when ranking crossing partners; one orbital period if `None`.
    pub crossing_horizon_s: Option<f64>,
    pub crossing_step_s: f64,
}

impl Default for TopologyOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::PlusGrid,
            partner_rule: PartnerRule::Nearest,
            terminal: None,
            crossing_horizon_s: None,
            crossing_step_s: 10.0,
        }
    }
}

impl TopologyOptions {
    pub fn new(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }
}

/// Slot in plane `to` partnered with `slot` of plane `from` under `rule`.
pub fn partner_slot(spec: &ConstellationSpec, from: u32, to: u32, slot: u32, rule: PartnerRule) -> u32 {
    let s = i64::from(spec.sats_per_plane);
    match rule {
        PartnerRule::SameSlot => slot,
        PartnerRule::Nearest => {
            // Along-track offset between the planes, in slots: (from - to) * F / P.
            let num = (i64::from(from) - i64::from(to)) * i64::from(spec.phasing_factor);
            let den = i64::from(spec.num_planes);
            let shift = (2 * num + den).div_euclid(2 * den);
            (i64::from(slot) + shift).rem_euclid(s) as u32
        }
    }
}

/// Immutable ISL graph over one constellation snapshot.
#[derive(Debug, Clone)]
pub struct IslGraph {
    pub spec: ConstellationSpec,
    pub earth: EarthModel,
    pub time_s: f64,
    pub edges: Vec<IslEdge>,
    adjacency: Vec<Vec<usize>>,
}

impl IslGraph {
    /// Builds a graph from explicit edges, sorted and deduplicated by endpoints.
    pub fn from_edges(
        spec: ConstellationSpec,
        earth: EarthModel,
        time_s: f64,
        edges: impl IntoIterator<Item = IslEdge>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        for e in edges {
            let e = IslEdge::new(e.a, e.b, e.kind, e.distance_km);
            if e.a == e.b {
                return Err(Error::domain(format!("self link at {}", e.a)));
            }
            for id in [e.a, e.b] {
                if !spec.contains(id) {
                    return Err(Error::UnknownNode(id));
                }
            }
            if seen.insert((e.a, e.b)) {
                list.push(e);
            }
        }
        list.sort_by_key(|e| (e.a, e.b));
        let mut adjacency = vec![Vec::new(); spec.total_satellites()];
        for (i, e) in list.iter().enumerate() {
            adjacency[spec.index_of(e.a).unwrap_or_default()].push(i);
            adjacency[spec.index_of(e.b).unwrap_or_default()].push(i);
        }
        Ok(Self {
            spec,
            earth,
            time_s,
            edges: list,
            adjacency,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, id: SatelliteId) -> bool {
        self.spec.contains(id)
    }

    /// Edges touching `id`.
    pub fn incident(&self, id: SatelliteId) -> impl Iterator<Item = &IslEdge> + '_ {
        let list = self.spec.index_of(id).map_or(&[][..], |i| &self.adjacency[i][..]);
        list.iter().map(move |&e| &self.edges[e])
    }

    pub fn degree(&self, id: SatelliteId) -> usize {
        self.incident(id).count()
    }

    pub fn count_kind(&self, kind: IslKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// Number of connected components (isolated satellites count as one each).
    pub fn component_count(&self) -> usize {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let id = self.spec.id_at(u);
                for e in self.incident(id) {
                    let v = self.spec.index_of(e.other(id)).unwrap_or_default();
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Edge-list CSV: `plane_a,slot_a,plane_b,slot_b,kind,distance_km`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "plane_a,slot_a,plane_b,slot_b,kind,distance_km")?;
        for e in &self.edges {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                e.a.plane,
                e.a.slot,
                e.b.plane,
                e.b.slot,
                e.kind,
                fixed(e.distance_km, 6)
            )?;
        }
        Ok(())
    }
}

fn plane_gap(spec: &ConstellationSpec, p: u32, q: u32) -> u32 {
    let d = p.abs_diff(q);
    d.min(spec.num_planes - d)
}

/// Builds the ISL graph for a snapshot.
///
/// Every +grid link must pass the visibility check and fit within the
/// terminal's reach; violations are collected and reported together.
/// Crossing links are best effort.
pub fn build_topology(snapshot: &Snapshot, options: &TopologyOptions) -> Result<IslGraph> {
    let spec = &snapshot.spec;
    let earth = &snapshot.earth;
    spec.validate()?;
    earth.validate()?;
    if snapshot.states.len() != spec.total_satellites() {
        return Err(Error::InvalidSpec(format!(
            "snapshot has {} states, constellation needs {}",
            snapshot.states.len(),
            spec.total_satellites()
        )));
    }
    if let Some(t) = &options.terminal {
        t.validate()?;
    }

    let mut required = Vec::new();
    let (planes, slots) = (spec.num_planes, spec.sats_per_plane);
    for p in 0..planes {
        if slots >= 2 {
            for s in 0..slots {
                required.push((
                    SatelliteId::new(p, s),
                    SatelliteId::new(p, (s + 1) % slots),
                    IslKind::IntraPlane,
                ));
            }
        }
        if planes >= 2 {
            let q = (p + 1) % planes;
            for s in 0..slots {
                let k = partner_slot(spec, p, q, s, options.partner_rule);
                required.push((SatelliteId::new(p, s), SatelliteId::new(q, k), IslKind::InterPlane));
            }
        }
    }

    let mut edges = Vec::with_capacity(required.len());
    let mut violations = Vec::new();
    for (x, y, kind) in required {
        let (px, py) = (snapshot.state(x)?.position, snapshot.state(y)?.position);
        let distance_km = px.distance(py);
        let reason = if !line_of_sight(px, py, earth)? {
            Some(ViolationReason::Occluded)
        } else if options.terminal.as_ref().is_some_and(|t| distance_km > t.max_link_km) {
            Some(ViolationReason::BeyondTerminalRange)
        } else {
            None
        };
        match reason {
            Some(reason) => violations.push(EdgeViolation {
                a: x,
                b: y,
                kind,
                distance_km,
                reason,
            }),
            None => edges.push(IslEdge::new(x, y, kind, distance_km)),
        }
    }
    if !violations.is_empty() {
        return Err(Error::InfeasibleTopology(violations));
    }

    if options.strategy == Strategy::PlusGridCrossing {
        edges.extend(select_crossing_links(snapshot, options)?);
    }
    IslGraph::from_edges(*spec, *earth, snapshot.time_s, edges)
}

/// Closer than this, two satellites are treated as coincident and never linked.
const MIN_LINK_KM: f64 = 1.0;

/// Greedy one-per-satellite matching of crossing-plane partners, longest
/// remaining contact first.
fn select_crossing_links(snapshot: &Snapshot, options: &TopologyOptions) -> Result<Vec<IslEdge>> {
    let spec = &snapshot.spec;
    let earth = &snapshot.earth;
    if spec.num_planes < 4 {
        return Ok(Vec::new());
    }
    let limit = LinkLimit::new(spec.altitude_km, earth, options.terminal.as_ref())?;
    let horizon = options
        .crossing_horizon_s
        .unwrap_or_else(|| spec.orbital_period_s(earth));
    let query = WindowQuery {
        horizon_s: horizon,
        step_s: options.crossing_step_s.min(horizon),
        terminal: None,
        setup_time_s: 0.0,
        carrier_hz: CARRIER_1550_NM_HZ,
    };
    query.validate()?;

    let states = &snapshot.states;
    let candidates: Vec<(f64, usize, usize)> = (0..states.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = &states[i];
            let limit = &limit;
            let query = &query;
            (i + 1..states.len()).filter_map(move |j| {
                let b = &states[j];
                if plane_gap(spec, a.id.plane, b.id.plane) < 2 || a.ascending == b.ascending {
                    return None;
                }
                if a.position.distance(b.position) < MIN_LINK_KM || !limit.linkable(a.position, b.position) {
                    return None;
                }
                let remaining = remaining_contact(a, b, limit, query);
                Some((remaining, i, j))
            })
        })
        .collect();

    let mut ranked = candidates;
    ranked.sort_by(|x, y| y.0.total_cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    let mut used = vec![false; states.len()];
    let mut out = Vec::new();
    for (_, i, j) in ranked {
        if used[i] || used[j] {
            continue;
        }
        used[i] = true;
        used[j] = true;
        let d = states[i].position.distance(states[j].position);
        out.push(IslEdge::new(states[i].id, states[j].id, IslKind::Crossing, d));
    }
    Ok(out)
}

fn remaining_contact(a: &SatelliteState, b: &SatelliteState, limit: &LinkLimit, query: &WindowQuery) -> f64 {
    scan_windows(a, b, limit, query)
        .ok()
        .and_then(|w| w.first().filter(|w| w.geometric_start_s == 0.0).map(|w| w.end_s))
        .unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::constellation::preset;
    use crate::geometry::{chord_distance, max_isl_range};

    fn snap(spec: ConstellationSpec) -> Snapshot {
        Snapshot::generate(spec, EarthModel::VISIBILITY, 0.0).unwrap()
    }

    #[test]
    fn starlink_plus_grid_counts() {
        let s = snap(preset("starlink-phase1-modified").unwrap());
        let g = build_topology(&s, &TopologyOptions::default()).unwrap();
        assert_eq!(g.node_count(), 1_584);
        assert_eq!(g.edge_count(), 3_168);
        assert!(s.spec.ids().all(|id| g.degree(id) == 4));
        assert_eq!(g.count_kind(IslKind::IntraPlane), 1_584);
        assert_eq!(g.count_kind(IslKind::InterPlane), 1_584);
        assert!(g.is_connected());
    }

    #[test]
    fn single_plane_is_a_ring() {
        // four satellites 90 degrees apart only see each other from high orbit
        let g = build_topology(
            &snap(ConstellationSpec::new(53.0, 3_000.0, 1, 4)),
            &TopologyOptions::default(),
        )
        .unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.count_kind(IslKind::InterPlane), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn intra_plane_lengths_match_chord() {
        let spec = preset("example-40x40").unwrap();
        let g = build_topology(&snap(spec), &TopologyOptions::default()).unwrap();
        let chord = chord_distance(9.0, EarthModel::VISIBILITY.radius_km + 550.0).unwrap();
        for e in g.edges.iter().filter(|e| e.kind == IslKind::IntraPlane) {
            assert!((e.distance_km - chord).abs() < 1e-6);
        }
    }

    #[test]
    fn edge_invariants_hold_for_presets() {
        for (name, spec) in crate::constellation::presets() {
            let s = snap(spec);
            if name == "phase2-c" {
                continue;
            }
            let g = build_topology(&s, &TopologyOptions::default()).unwrap();
            let range = max_isl_range(spec.altitude_km, &s.earth).unwrap();
            let mut pairs = HashSet::new();
            for e in &g.edges {
                assert!(e.a < e.b, "{name}");
                assert!(e.distance_km > 0.0 && e.distance_km <= range, "{name}");
                assert!(pairs.insert((e.a, e.b)), "{name}: duplicate edge");
                match e.kind {
                    IslKind::IntraPlane => assert_eq!(e.a.plane, e.b.plane),
                    IslKind::InterPlane => assert_eq!(plane_gap(&spec, e.a.plane, e.b.plane), 1),
                    IslKind::Crossing => unreachable!(),
                }
            }
            assert!(g.is_connected(), "{name}");
            assert!(spec.ids().all(|id| g.degree(id) == 4), "{name}");
        }
    }

    #[test]
    fn partner_rules() {
        let spec = ConstellationSpec::new(53.0, 550.0, 6, 10).with_phasing(4);
        // offset -4/6 rounds to -1 slot going forward
        assert_eq!(partner_slot(&spec, 0, 1, 3, PartnerRule::Nearest), 2);
        assert_eq!(partner_slot(&spec, 0, 1, 3, PartnerRule::SameSlot), 3);
        // wrap: (5 - 0) * 4 / 6 = 3.33 -> 3
        assert_eq!(partner_slot(&spec, 5, 0, 9, PartnerRule::Nearest), 2);
        let zero = ConstellationSpec::new(53.0, 550.0, 6, 10);
        assert_eq!(partner_slot(&zero, 5, 0, 9, PartnerRule::Nearest), 9);
    }

    #[test]
    fn nearest_partner_minimizes_phase_gap() {
        let spec = ConstellationSpec::new(53.0, 550.0, 7, 9).with_phasing(3);
        let gap = |p: u32, s: u32, q: u32, k: u32| {
            let d = (spec.initial_arg_latitude_deg(SatelliteId::new(p, s))
                - spec.initial_arg_latitude_deg(SatelliteId::new(q, k)))
            .rem_euclid(360.0);
            d.min(360.0 - d)
        };
        for p in 0..7 {
            let q = (p + 1) % 7;
            for s in 0..9 {
                let k = partner_slot(&spec, p, q, s, PartnerRule::Nearest);
                let best = (0..9).map(|k| gap(p, s, q, k)).fold(f64::INFINITY, f64::min);
                assert!((gap(p, s, q, k) - best).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn infeasible_terminal_is_reported_per_edge() {
        let spec = ConstellationSpec::new(53.0, 550.0, 12, 10);
        let opts = TopologyOptions {
            terminal: Some(TerminalSpec {
                vendor: "test".into(),
                name: "short".into(),
                capacity_gbps: 1.0,
                max_link_km: 100.0,
                standard: None,
                atp_available: None,
            }),
            ..TopologyOptions::default()
        };
        match build_topology(&snap(spec), &opts) {
            Err(Error::InfeasibleTopology(v)) => {
                assert_eq!(v.len(), 240);
                assert!(v.iter().all(|x| x.reason == ViolationReason::BeyondTerminalRange));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phase2_c_adjacent_planes_are_occluded() {
        // five planes 72 degrees apart: abreast satellites near the equator
        // cannot see each other over the limb
        let s = snap(preset("phase2-c").unwrap());
        match build_topology(&s, &TopologyOptions::default()) {
            Err(Error::InfeasibleTopology(v)) => {
                assert!(v
                    .iter()
                    .all(|x| x.kind == IslKind::InterPlane && x.reason == ViolationReason::Occluded));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn occluded_ring_is_infeasible() {
        // three satellites 120 degrees apart at 550 km cannot see each other
        let spec = ConstellationSpec::new(53.0, 550.0, 1, 3);
        match build_topology(&snap(spec), &TopologyOptions::default()) {
            Err(Error::InfeasibleTopology(v)) => {
                assert_eq!(v.len(), 3);
                assert!(v.iter().all(|x| x.reason == ViolationReason::Occluded));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn crossing_links_are_valid() {
        let spec = preset("example-40x40").unwrap();
        let s = snap(spec);
        let opts = TopologyOptions {
            crossing_step_s: 30.0,
            ..TopologyOptions::new(Strategy::PlusGridCrossing)
        };
        let g = build_topology(&s, &opts).unwrap();
        let crossing: Vec<_> = g.edges.iter().filter(|e| e.kind == IslKind::Crossing).collect();
        assert!(!crossing.is_empty());
        let range = max_isl_range(550.0, &s.earth).unwrap();
        let mut used = HashSet::new();
        for e in &crossing {
            assert!(plane_gap(&spec, e.a.plane, e.b.plane) >= 2);
            assert_ne!(s.state(e.a).unwrap().ascending, s.state(e.b).unwrap().ascending);
            assert!(e.distance_km >= MIN_LINK_KM && e.distance_km <= range);
            assert!(
                used.insert(e.a) && used.insert(e.b),
                "two crossing links on one satellite"
            );
        }
        assert_eq!(
            g.count_kind(IslKind::IntraPlane) + g.count_kind(IslKind::InterPlane),
            3_200
        );
        assert!(spec.ids().all(|id| g.degree(id) <= 5));
    }

    #[test]
    fn csv_layout() {
        let g = build_topology(
            &snap(ConstellationSpec::new(53.0, 3_000.0, 1, 4)),
            &TopologyOptions::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "plane_a,slot_a,plane_b,slot_b,kind,distance_km");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,0,0,1,intra_plane,"));
        assert!(lines
            .iter()
            .skip(1)
            .all(|l| l.rsplit(',').next().unwrap().split('.').nth(1).unwrap().len() == 6));
    }

    #[test]
    fn kind_round_trip() {
        for k in [IslKind::IntraPlane, IslKind::InterPlane, IslKind::Crossing] {
            assert_eq!(k.as_str().parse::<IslKind>().unwrap(), k);
        }
        assert!("diagonal".parse::<IslKind>().is_err());
    }
}
