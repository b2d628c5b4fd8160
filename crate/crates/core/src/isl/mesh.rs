//! Split of a +grid into the northbound and southbound meshes.

use crate::constellation::{SatelliteId, SatelliteState};
use crate::error::{Error, Result};

use super::IslGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshClass {
    /// Both endpoints move in the same latitude direction.
    IntraMesh,
    /// Endpoints on opposite sides of a turnaround, or in opposite-direction groups.
    InterMesh,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshReport {
    /// Ascending flag per satellite, in the constellation's plane-major order.
    pub ascending: Vec<(SatelliteId, bool)>,
    /// One class per edge, aligned with `IslGraph::edges`.
    pub edge_classes: Vec<MeshClass>,
    pub intra_mesh: usize,
    pub inter_mesh: usize,
    pub total_edges: usize,
}

impl MeshReport {
    pub fn ascending_count(&self) -> usize {
        self.ascending.iter().filter(|(_, up)| *up).count()
    }
}

pub fn classify_meshes(graph: &IslGraph, states: &[SatelliteState]) -> Result<MeshReport> {
    let spec = &graph.spec;
    if states.len() != spec.total_satellites() {
        return Err(Error::InvalidSpec(format!(
            "{} states for a {}-satellite graph",
            states.len(),
            spec.total_satellites()
        )));
    }
    let mut up = vec![false; states.len()];
    for st in states {
        let i = spec.index_of(st.id).ok_or(Error::UnknownNode(st.id))?;
        up[i] = st.is_ascending();
    }
    let flag = |id: SatelliteId| up[spec.index_of(id).unwrap_or_default()];

    let edge_classes: Vec<_> = graph
        .edges
        .iter()
        .map(|e| {
            if flag(e.a) == flag(e.b) {
                MeshClass::IntraMesh
            } else {
                MeshClass::InterMesh
            }
        })
        .collect();
    let intra_mesh = edge_classes.iter().filter(|c| **c == MeshClass::IntraMesh).count();
    Ok(MeshReport {
        ascending: spec.ids().map(|id| (id, flag(id))).collect(),
        inter_mesh: edge_classes.len() - intra_mesh,
        intra_mesh,
        total_edges: graph.edges.len(),
        edge_classes,
    })
}
