#![allow(dead_code)]

use std::collections::HashMap;

use owsn::constellation::{ConstellationSpec, SatelliteId, Snapshot};
use owsn::geometry::EarthModel;
use owsn::isl::{build_topology, IslGraph, Strategy, TopologyOptions};

pub const EARTH: EarthModel = EarthModel::VISIBILITY;

/// Brute force: minimum total length over every simple path with at most `max_edges` edges.
pub fn brute_force_distance(graph: &IslGraph, src: SatelliteId, dst: SatelliteId, max_edges: usize) -> Option<f64> {
    let mut adj: HashMap<SatelliteId, Vec<(SatelliteId, f64)>> = HashMap::new();
    for e in &graph.edges {
        adj.entry(e.a).or_default().push((e.b, e.distance_km));
        adj.entry(e.b).or_default().push((e.a, e.distance_km));
    }
    fn walk(
        adj: &HashMap<SatelliteId, Vec<(SatelliteId, f64)>>,
        at: SatelliteId,
        dst: SatelliteId,
        left: usize,
        acc: f64,
        visited: &mut Vec<SatelliteId>,
        best: &mut Option<f64>,
    ) {
        if at == dst {
            if best.is_none_or(|b| acc < b) {
                *best = Some(acc);
            }
            return;
        }
        if left == 0 {
            return;
        }
        for &(next, w) in adj.get(&at).map(Vec::as_slice).unwrap_or(&[]) {
            if !visited.contains(&next) {
                visited.push(next);
                walk(adj, next, dst, left - 1, acc + w, visited, best);
                visited.pop();
            }
        }
    }
    let mut best = None;
    walk(&adj, src, dst, max_edges, 0.0, &mut vec![src], &mut best);
    best
}

pub fn toy_graph(strategy: Strategy) -> (Snapshot, IslGraph) {
    // 4 planes x 8 slots; at 8,000 km even 90 deg apart neighbors clear the limb
    let spec = ConstellationSpec::new(53.0, 8_000.0, 4, 8).with_phasing(1);
    let snap = Snapshot::generate(spec, EARTH, 0.0).unwrap();
    let graph = build_topology(&snap, &TopologyOptions::new(strategy)).unwrap();
    (snap, graph)
}
