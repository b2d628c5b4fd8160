//! Shortest-propagation-delay routing over an ISL graph between ground points.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::Write;

use crate::constellation::{SatelliteId, Snapshot};
use crate::error::{Error, Result};
use crate::format::fixed;
use crate::geometry::{EarthModel, Vec3};
use crate::isl::IslGraph;
use crate::latency::UseCaseScenario;

/// Sidereal rotation rate of the Earth, rad/s.
pub const EARTH_ROTATION_RAD_S: f64 = 7.292_115_9e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct GroundPoint {
    pub latitude_deg: f64,
    /// Normalized to (-180, 180].
    pub longitude_deg: f64,
    pub name: Option<String>,
}

impl GroundPoint {
    pub fn new(latitude_deg: f64, longitude_deg: f64) -> Result<Self> {
        if !(latitude_deg.is_finite() && latitude_deg.abs() <= 90.0) {
            return Err(Error::domain(format!("latitude {latitude_deg} outside [-90, 90]")));
        }
        if !longitude_deg.is_finite() {
            return Err(Error::domain("longitude must be finite"));
        }
        let mut lon = (longitude_deg + 180.0).rem_euclid(360.0) - 180.0;
        if lon == -180.0 {
            lon = 180.0;
        }
        Ok(Self {
            latitude_deg,
            longitude_deg: lon,
            name: None,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Point on the surface directly beneath an inertial position at time `t_s`.
    pub fn beneath(position: Vec3, t_s: f64) -> Result<Self> {
        let r = position.norm();
        let lat = (position.z / r).asin().to_degrees();
        let lon = (position.y.atan2(position.x) - EARTH_ROTATION_RAD_S * t_s).to_degrees();
        Self::new(lat, lon)
    }

    /// Inertial position at time `t_s`; Earth-fixed and inertial axes coincide at t = 0.
    pub fn position(&self, earth: &EarthModel, t_s: f64) -> Vec3 {
        let lat = self.latitude_deg.to_radians();
        let lon = self.longitude_deg.to_radians() + EARTH_ROTATION_RAD_S * t_s;
        let r = earth.radius_km;
        Vec3::new(r * lat.cos() * lon.cos(), r * lat.cos() * lon.sin(), r * lat.sin())
    }

    /// Central angle to `other`, degrees.
    pub fn central_angle_deg(&self, other: &GroundPoint) -> f64 {
        let (p1, p2) = (self.latitude_deg.to_radians(), other.latitude_deg.to_radians());
        let dl = (other.longitude_deg - self.longitude_deg).to_radians();
        let y = ((p2.cos() * dl.sin()).powi(2) + (p1.cos() * p2.sin() - p1.sin() * p2.cos() * dl.cos()).powi(2)).sqrt();
        let x = p1.sin() * p2.sin() + p1.cos() * p2.cos() * dl.cos();
        y.atan2(x).to_degrees()
    }
}

impl std::str::FromStr for GroundPoint {
    type Err = Error;

    /// Parses `lat,lon` in degrees.
    fn from_str(s: &str) -> Result<Self> {
        let (lat, lon) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("ground point '{s}' is not lat,lon")))?;
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("ground point '{s}' is not lat,lon")))
        };
        GroundPoint::new(num(lat)?, num(lon)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Attachment {
    pub satellite: SatelliteId,
    pub slant_km: f64,
}

/// Closest satellite to a ground point (ties to the lowest id).
///
/// With `min_elevation_deg`, satellites below that elevation are ignored.
pub fn attach_ground(g: &GroundPoint, snapshot: &Snapshot, min_elevation_deg: Option<f64>) -> Result<Attachment> {
    let limit = snapshot.spec.max_latitude_deg();
    if g.latitude_deg.abs() > limit {
        return Err(Error::Coverage {
            latitude_deg: g.latitude_deg.abs(),
            limit_deg: limit,
        });
    }
    let here = g.position(&snapshot.earth, snapshot.time_s);
    let up = here * (1.0 / here.norm());
    let min_sin = min_elevation_deg.map(|e| e.to_radians().sin());

    let mut best: Option<Attachment> = None;
    for st in &snapshot.states {
        let los = st.position - here;
        let slant_km = los.norm();
        if let Some(m) = min_sin {
            if los.dot(up) < m * slant_km {
                continue;
            }
        }
        // states are in id order, so strict < keeps the lowest id on ties
        if best.is_none_or(|b| slant_km < b.slant_km) {
            best = Some(Attachment {
                satellite: st.id,
                slant_km,
            });
        }
    }
    best.ok_or(Error::NoVisibleSatellite {
        min_elevation_deg: min_elevation_deg.unwrap_or(0.0),
    })
}

/// Satellite sequence through the ISL graph.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutePath {
    pub ingress: SatelliteId,
    /// Every satellite visited, `ingress` first and `egress` last.
    pub hops: Vec<SatelliteId>,
    pub egress: SatelliteId,
    pub total_distance_km: f64,
    pub latency_ms: f64,
}

impl RoutePath {
    pub fn isl_hops(&self) -> usize {
        self.hops.len().saturating_sub(1)
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Queued {
    dist: f64,
    node: usize,
}

impl Eq for Queued {}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(graph: &IslGraph, source: usize) -> Vec<f64> {
    let spec = &graph.spec;
    let mut dist = vec![f64::INFINITY; graph.node_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Queued {
        dist: 0.0,
        node: source,
    });
    while let Some(Queued { dist: d, node }) = heap.pop() {
        if d > dist[node] {
            continue;
        }
        let id = spec.id_at(node);
        for e in graph.incident(id) {
            let next = spec.index_of(e.other(id)).unwrap_or_default();
            let nd = d + e.distance_km;
            if nd < dist[next] {
                dist[next] = nd;
                heap.push(Queued { dist: nd, node: next });
            }
        }
    }
    dist
}

/// Minimum-distance path between two satellites, or `None` if they are disconnected.
///
/// Among equal-length paths the lexicographically smallest id sequence wins.
pub fn shortest_path(graph: &IslGraph, src: SatelliteId, dst: SatelliteId) -> Result<Option<RoutePath>> {
    let spec = &graph.spec;
    let s = spec.index_of(src).ok_or(Error::UnknownNode(src))?;
    let t = spec.index_of(dst).ok_or(Error::UnknownNode(dst))?;

    let from_src = dijkstra(graph, s);
    let total = from_src[t];
    if !total.is_finite() {
        return Ok(None);
    }
    let to_dst = dijkstra(graph, t);
    let tol = 1e-9 * total.max(1.0);

    let mut hops = vec![src];
    let mut cur = src;
    let mut walked = 0.0;
    while cur != dst {
        let next = graph
            .incident(cur)
            .filter_map(|e| {
                let v = e.other(cur);
                let vi = spec.index_of(v)?;
                let through = walked + e.distance_km + to_dst[vi];
                ((through - total).abs() <= tol && to_dst[vi] < to_dst[spec.index_of(cur)?])
                    .then_some((v, e.distance_km))
            })
            .min_by_key(|(v, _)| *v);
        let (v, w) = next.expect("a tight edge leaves every node on a shortest path");
        walked += w;
        hops.push(v);
        cur = v;
    }
    Ok(Some(RoutePath {
        ingress: src,
        egress: dst,
        total_distance_km: walked,
        latency_ms: walked / crate::geometry::SPEED_OF_LIGHT_KM_S * 1e3,
        hops,
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndToEnd {
    pub route: RoutePath,
    pub uplink_km: f64,
    pub downlink_km: f64,
    /// Uplink + ISL path + downlink.
    pub satellite_km: f64,
    pub satellite_latency_ms: f64,
    pub terrestrial_km: f64,
    pub terrestrial_latency_ms: f64,
}

/// Ground-to-ground comparison: nearest-satellite attachment at both ends and
/// the shortest ISL route, against fiber along the great circle.
pub fn end_to_end(
    from: &GroundPoint,
    to: &GroundPoint,
    graph: &IslGraph,
    snapshot: &Snapshot,
    scenario: &UseCaseScenario,
    min_elevation_deg: Option<f64>,
) -> Result<EndToEnd> {
    scenario.validate()?;
    let up = attach_ground(from, snapshot, min_elevation_deg)?;
    let down = attach_ground(to, snapshot, min_elevation_deg)?;
    let mut route = shortest_path(graph, up.satellite, down.satellite)?.ok_or(Error::NoPath {
        from: up.satellite,
        to: down.satellite,
    })?;
    route.latency_ms = route.total_distance_km / scenario.vacuum_speed_km_s * 1e3;
    let satellite_km = up.slant_km + route.total_distance_km + down.slant_km;
    let terrestrial_km = from.central_angle_deg(to).to_radians() * snapshot.earth.radius_km;
    Ok(EndToEnd {
        uplink_km: up.slant_km,
        downlink_km: down.slant_km,
        satellite_km,
        satellite_latency_ms: satellite_km / scenario.vacuum_speed_km_s * 1e3,
        terrestrial_km,
        terrestrial_latency_ms: terrestrial_km / scenario.fiber.speed_km_s * 1e3,
        route,
    })
}

/// Route report: `hop_index,plane,slot,cum_distance_km` per satellite
/// (cumulative from the ground source), then `total_km,sat_ms,terr_ms`.
pub fn write_route_report<W: Write>(e2e: &EndToEnd, graph: &IslGraph, mut out: W) -> Result<()> {
    writeln!(out, "hop_index,plane,slot,cum_distance_km")?;
    let mut cum = e2e.uplink_km;
    let mut prev: Option<SatelliteId> = None;
    for (i, id) in e2e.route.hops.iter().enumerate() {
        if let Some(p) = prev {
            cum += graph
                .incident(p)
                .find(|e| e.other(p) == *id)
                .map(|e| e.distance_km)
                .unwrap_or_default();
        }
        writeln!(out, "{},{},{},{}", i, id.plane, id.slot, fixed(cum, 6))?;
        prev = Some(*id);
    }
    writeln!(out, "total_km,sat_ms,terr_ms")?;
    writeln!(
        out,
        "{},{},{}",
        fixed(e2e.satellite_km, 6),
        fixed(e2e.satellite_latency_ms, 6),
        fixed(e2e.terrestrial_latency_ms, 6)
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;
    use crate::constellation::{preset, ConstellationSpec};
    use crate::geometry::chord_distance;
    use crate::isl::{build_topology, TopologyOptions};

    fn setup(spec: ConstellationSpec, earth: EarthModel) -> (Snapshot, IslGraph) {
        let snap = Snapshot::generate(spec, earth, 0.0).unwrap();
        let g = build_topology(&snap, &TopologyOptions::default()).unwrap();
        (snap, g)
    }

    #[test]
    fn ground_point_normalization() {
        assert_eq!(GroundPoint::new(0.0, 190.0).unwrap().longitude_deg, -170.0);
        assert_eq!(GroundPoint::new(0.0, -180.0).unwrap().longitude_deg, 180.0);
        assert_eq!(GroundPoint::new(0.0, 540.0).unwrap().longitude_deg, 180.0);
        assert!(GroundPoint::new(91.0, 0.0).is_err());
        let g: GroundPoint = "40.7, -74.0".parse().unwrap();
        assert_eq!((g.latitude_deg, g.longitude_deg), (40.7, -74.0));
        assert!("40.7".parse::<GroundPoint>().is_err());
    }

    #[test]
    fn attach_directly_beneath() {
        let (snap, _) = setup(preset("starlink-phase1-modified").unwrap(), EarthModel::USE_CASE);
        let target = snap.states[137];
        let g = GroundPoint::beneath(target.position, snap.time_s).unwrap();
        let a = attach_ground(&g, &snap, None).unwrap();
        assert_eq!(a.satellite, target.id);
        assert_relative_eq!(a.slant_km, 550.0, epsilon = 1e-6);
    }

    #[test]
    fn attach_outside_band() {
        let (snap, _) = setup(preset("starlink-phase1-modified").unwrap(), EarthModel::USE_CASE);
        let g = GroundPoint::new(85.0, 10.0).unwrap();
        assert!(matches!(attach_ground(&g, &snap, None), Err(Error::Coverage { .. })));
    }

    #[test]
    fn attach_matches_exhaustive_scan() {
        let (snap, _) = setup(preset("example-40x40").unwrap(), EarthModel::VISIBILITY);
        for (lat, lon) in [(12.3, 45.6), (-50.0, -120.0), (0.0, 0.0), (33.3, 179.9)] {
            let g = GroundPoint::new(lat, lon).unwrap();
            let here = g.position(&snap.earth, 0.0);
            let brute = snap
                .states
                .iter()
                .map(|s| (s.position.distance(here), s.id))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
                .unwrap();
            let a = attach_ground(&g, &snap, None).unwrap();
            assert_eq!(a.satellite, brute.1);
            assert_eq!(a.slant_km, brute.0);
        }
    }

    #[test]
    fn elevation_mask() {
        let (snap, _) = setup(ConstellationSpec::new(53.0, 3_000.0, 1, 4), EarthModel::USE_CASE);
        let g = GroundPoint::new(0.0, 45.0).unwrap();
        assert!(attach_ground(&g, &snap, None).is_ok());
        assert!(matches!(
            attach_ground(&g, &snap, Some(80.0)),
            Err(Error::NoVisibleSatellite { .. })
        ));
    }

    #[test]
    fn trivial_paths() {
        let spec = preset("starlink-phase1-modified").unwrap();
        let (_, g) = setup(spec, EarthModel::VISIBILITY);
        let a = SatelliteId::new(3, 7);
        let p = shortest_path(&g, a, a).unwrap().unwrap();
        assert_eq!(p.hops, vec![a]);
        assert_eq!(p.total_distance_km, 0.0);
        let b = SatelliteId::new(3, 8);
        let p = shortest_path(&g, a, b).unwrap().unwrap();
        assert_eq!(p.hops, vec![a, b]);
        let chord = chord_distance(spec.slot_spacing_deg(), spec.orbit_radius_km(&EarthModel::VISIBILITY)).unwrap();
        assert!((p.total_distance_km - chord).abs() < 1e-6);
        assert!(matches!(
            shortest_path(&g, a, SatelliteId::new(99, 0)),
            Err(Error::UnknownNode(_))
        ));
    }

    #[test]
    fn disconnected_is_none() {
        let spec = ConstellationSpec {
            raan_spread_deg: 60.0,
            ..ConstellationSpec::new(53.0, 550.0, 2, 12)
        };
        let snap = Snapshot::generate(spec, EarthModel::VISIBILITY, 0.0).unwrap();
        let full = build_topology(&snap, &TopologyOptions::default()).unwrap();
        let rings = IslGraph::from_edges(
            spec,
            snap.earth,
            0.0,
            full.edges.iter().copied().filter(|e| e.a.plane == e.b.plane),
        )
        .unwrap();
        assert!(shortest_path(&rings, SatelliteId::new(0, 0), SatelliteId::new(1, 0))
            .unwrap()
            .is_none());
    }

    #[test]
    fn lexicographic_tie_break() {
        // ring of 4: both ways around to the opposite slot are equally long
        let (_, g) = setup(ConstellationSpec::new(53.0, 3_000.0, 1, 4), EarthModel::USE_CASE);
        let p = shortest_path(&g, SatelliteId::new(0, 0), SatelliteId::new(0, 2))
            .unwrap()
            .unwrap();
        assert_eq!(p.hops[1], SatelliteId::new(0, 1));
    }

    #[test]
    fn same_point_end_to_end() {
        let spec = preset("starlink-phase1-modified").unwrap();
        let (snap, g) = setup(spec, EarthModel::USE_CASE);
        let gp = GroundPoint::beneath(snap.states[10].position, 0.0).unwrap();
        let r = end_to_end(&gp, &gp, &g, &snap, &UseCaseScenario::default(), None).unwrap();
        assert_eq!(r.route.isl_hops(), 0);
        assert_relative_eq!(r.satellite_latency_ms, 1_100.0 / 299_792.458 * 1e3, epsilon = 1e-9);
        assert_eq!((r.satellite_latency_ms * 100.0).round() / 100.0, 3.67);
        assert_eq!(r.terrestrial_latency_ms, 0.0);
    }

    #[test]
    fn consecutive_satellites_lower_bound() {
        let spec = preset("starlink-phase1-modified").unwrap();
        let (snap, g) = setup(spec, EarthModel::USE_CASE);
        let scenario = UseCaseScenario::default();
        let chord = chord_distance(spec.slot_spacing_deg(), 6_928.0).unwrap();
        let bound = (1_100.0 + chord) / scenario.vacuum_speed_km_s * 1e3;
        let (a, b) = (snap.states[200].position, snap.states[201].position);
        let ga = GroundPoint::beneath(a, 0.0).unwrap();
        let gb = GroundPoint::beneath(b, 0.0).unwrap();
        let r = end_to_end(&ga, &gb, &g, &snap, &scenario, None).unwrap();
        assert_relative_eq!(r.satellite_latency_ms, bound, max_relative = 1e-9);
        // nudged ground points still respect the bound
        let gc = GroundPoint::new(ga.latitude_deg + 0.5, ga.longitude_deg - 0.3).unwrap();
        let r = end_to_end(&gc, &gb, &g, &snap, &scenario, None).unwrap();
        assert!(r.satellite_latency_ms >= bound - 1e-12);
    }

    #[test]
    fn report_layout() {
        let spec = ConstellationSpec::new(53.0, 550.0, 1, 66);
        let (snap, g) = setup(spec, EarthModel::USE_CASE);
        let ga = GroundPoint::beneath(snap.states[0].position, 0.0).unwrap();
        let gb = GroundPoint::beneath(snap.states[2].position, 0.0).unwrap();
        let r = end_to_end(&ga, &gb, &g, &snap, &UseCaseScenario::default(), None).unwrap();
        let mut buf = Vec::new();
        write_route_report(&r, &g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "hop_index,plane,slot,cum_distance_km");
        assert_eq!(lines[1], "0,0,0,550.000000");
        assert!(lines[3].starts_with("2,0,2,"));
        assert_eq!(lines[4], "total_km,sat_ms,terr_ms");
        assert_eq!(lines.len(), 6);
    }
}
