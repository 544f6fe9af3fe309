use serde::Serialize;

use crate::graph::{OrientedGraph, Sign};
use crate::params::SurfaceParams;

/// One step of [`reduce`], recorded for reverse replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ReductionStep {
    /// `vertex` (degree ≤ 3) was deleted after its non-adjacent neighbours
    /// were joined by `completion` arcs, oriented low index to high index.
    RemoveLowDegreeVertex {
        vertex: usize,
        /// Each former neighbour with the sign of `vertex` toward it.
        neighbours: Vec<(usize, Sign)>,
        completion: Vec<(usize, usize)>,
    },
    /// The arc `arc` between `light` (degree 4 or 5) and `other` (degree
    /// below 12) was deleted.
    RemoveLowDegreeEdge {
        light: usize,
        other: usize,
        arc: (usize, usize),
        light_degree: usize,
        other_degree: usize,
    },
}

/// A graph with some vertices deleted. Deleted vertices keep their index and
/// have no arcs.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: OrientedGraph,
    pub alive: Vec<bool>,
    pub steps: Vec<ReductionStep>,
}

impl Reduction {
    pub fn core_vertices(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.alive[v]).collect()
    }

    /// The surviving graph relabelled onto `0..core_size`, with the original
    /// index of every core vertex.
    pub fn compact_core(&self) -> (OrientedGraph, Vec<usize>) {
        let keep = self.core_vertices();
        let mut index = vec![usize::MAX; self.graph.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let arcs = self.graph.arcs().map(|(u, v)| (index[u], index[v]));
        let core = OrientedGraph::from_arcs(keep.len(), arcs).expect("subgraph of an oriented graph");
        (core, keep)
    }
}

fn removable_vertex(g: &OrientedGraph, alive: &[bool], params: &SurfaceParams) -> Option<usize> {
    (0..g.n())
        .filter(|&v| alive[v] && g.degree(v) <= params.removable_degree)
        .min_by_key(|&v| (g.degree(v), v))
}

fn removable_edge(g: &OrientedGraph, alive: &[bool], params: &SurfaceParams) -> Option<(usize, usize)> {
    (0..g.n()).filter(|&v| alive[v] && params.is_light(g.degree(v))).find_map(|v| {
        g.neighbours(v).into_iter().find(|&w| g.degree(w) < params.heavy_degree).map(|w| (v, w))
    })
}

/// Whether neither reduction rule applies to the live part of `g`.
pub fn is_reduced(g: &OrientedGraph, alive: &[bool], params: &SurfaceParams) -> bool {
    removable_vertex(g, alive, params).is_none() && removable_edge(g, alive, params).is_none()
}

/// Deletes vertices of degree at most 3 (completing their neighbourhoods to
/// cliques) until none is left, then deletes one edge between a degree 4
/// or 5 vertex and a neighbour of degree below 12, and repeats. Vertices of
/// least degree go first, then lowest index. The thresholds do not depend
/// on the genus.
pub fn reduce(g: &OrientedGraph) -> Reduction {
    let params = SurfaceParams::new(2).expect("genus 2 is valid");
    let mut graph = g.clone();
    let mut alive = vec![true; g.n()];
    let mut steps = Vec::new();
    loop {
        if let Some(v) = removable_vertex(&graph, &alive, &params) {
            let nbrs = graph.neighbours(v);
            let neighbours: Vec<(usize, Sign)> =
                nbrs.iter().map(|&u| (u, graph.sign(v, u).expect("adjacent"))).collect();
            for &u in &nbrs {
                graph.remove_edge(v, u);
            }
            let mut completion = Vec::new();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if !graph.adjacent(a, b) {
                        graph.add_arc(a, b).expect("non-adjacent pair");
                        completion.push((a, b));
                    }
                }
            }
            alive[v] = false;
            steps.push(ReductionStep::RemoveLowDegreeVertex { vertex: v, neighbours, completion });
            continue;
        }
        if let Some((light, other)) = removable_edge(&graph, &alive, &params) {
            let light_degree = graph.degree(light);
            let other_degree = graph.degree(other);
            let arc = graph.remove_edge(light, other).expect("adjacent");
            steps.push(ReductionStep::RemoveLowDegreeEdge { light, other, arc, light_degree, other_degree });
            continue;
        }
        break;
    }
    Reduction { graph, alive, steps }
}
