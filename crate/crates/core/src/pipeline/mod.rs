//! Colouring an oriented graph of Euler genus at most `g` into a target
//! built from a full graph.
//!
//! The graph is first reduced (low-degree vertices and edges removed), the
//! reduced core is mapped along a degeneracy order using a 2-dipath
//! colouring to choose partite classes, and the reductions are then undone
//! in reverse, re-inserting each removed vertex or edge.

mod discharge;
mod homomorphism;
mod reduce;

use serde::Serialize;
use thiserror::Error;

use crate::dipath::{surface_two_dipath, DipathError};
use crate::full::{Target, TargetClass};
use crate::graph::{degeneracy_ordering, OrientedGraph};
use crate::params::SurfaceParams;

pub use discharge::{
    discharge_check, Charge, ChargeLedger, DischargeError, DischargeOutcome, DischargeSummary, Transfer,
};
pub use homomorphism::{
    class_avoiding, embed_prefix, embed_small, extend_vertex, reserved_injective, validate, ExtendError,
    Homomorphism,
};
pub use reduce::{is_reduced, reduce, Reduction, ReductionStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("the genus assertion is false: {0}")]
    GenusAssumptionViolated(String),
    #[error("target refused an extension: {0}")]
    Extend(#[from] ExtendError),
    #[error("internal error: {0}")]
    Defect(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Validate the partial map after every replayed reduction.
    pub check_replay: bool,
    /// Collect a line-oriented trace.
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub valid: bool,
    pub colours_used: usize,
    pub reduction_steps: usize,
    pub core_size: usize,
    pub psi_palette: usize,
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome<V> {
    pub homomorphism: Homomorphism<V>,
    pub report: PipelineReport,
    pub steps: Vec<ReductionStep>,
    /// Core vertices (original indices) in degeneracy order.
    pub core_order: Vec<usize>,
    /// Colour of each entry of `core_order`; empty when the core was
    /// embedded directly.
    pub psi: Vec<usize>,
    /// Image of each entry of `core_order` before any replay.
    pub core_images: Vec<V>,
    pub discharge: DischargeSummary,
    /// Whether the core images sat in the reserved pool for the first `6g`
    /// positions and in class `ψ(v)` afterwards.
    pub class_structure_ok: bool,
    /// Replay steps after which the partial map was checked (0 unless
    /// `check_replay`).
    pub replay_checks: usize,
    pub trace: Vec<String>,
}

fn trace(out: &mut Vec<String>, on: bool, line: impl FnOnce() -> String) {
    if on {
        out.push(line());
    }
}

/// Maps `g` into `target`, assuming `g` has Euler genus at most `genus`.
pub fn colour_surface_graph<T: Target>(
    g: &OrientedGraph,
    genus: usize,
    target: &mut T,
    options: PipelineOptions,
) -> Result<PipelineOutcome<T::Vertex>, PipelineError> {
    let params = SurfaceParams::new(genus).map_err(|e| PipelineError::GenusTooSmall(e.0))?;
    let mut log = Vec::new();
    let on = options.trace;

    // (a) reduce
    let reduction = reduce(g);
    let (core, keep) = reduction.compact_core();
    trace(&mut log, on, || format!("reduce steps={} core={}", reduction.steps.len(), keep.len()));

    // (b) degree and charge checks
    let discharge = discharge_check(&core, genus).map_err(|e| PipelineError::Defect(e.to_string()))?.summary;
    if !discharge.max_degree_ok {
        return Err(PipelineError::GenusAssumptionViolated(format!(
            "core has maximum degree {} > 12g - 12 = {}",
            discharge.max_degree, params.max_degree
        )));
    }
    if !discharge.conserved || !discharge.nonnegative {
        return Err(PipelineError::Defect("discharging ledger inconsistent".into()));
    }

    // (c)-(e) core
    let mut h = Homomorphism::new(g.n());
    let (order, psi) = if core.n() <= params.reserved_prefix {
        let ord = degeneracy_ordering(&core);
        (ord.order, Vec::new())
    } else {
        let surface = surface_two_dipath(&core, genus).map_err(|e| match e {
            DipathError::DegeneracyViolation { .. } | DipathError::PreconditionViolated(_) => {
                PipelineError::GenusAssumptionViolated(e.to_string())
            }
            DipathError::InvalidInner => PipelineError::Defect(e.to_string()),
        })?;
        let psi = surface.ordering.order.iter().map(|&v| surface.colouring.colours[v]).collect();
        (surface.ordering.order, psi)
    };
    let core_order: Vec<usize> = order.iter().map(|&v| keep[v]).collect();
    let prefix = core_order.len().min(params.reserved_prefix);
    embed_prefix(&reduction.graph, &core_order[..prefix], &mut h, target)?;
    for (i, &v) in core_order.iter().enumerate().skip(prefix) {
        let class = psi[i] - 1;
        extend_vertex(&reduction.graph, &mut h, v, class, target)?;
    }
    let core_images: Vec<T::Vertex> =
        core_order.iter().map(|&v| h.get(v).expect("core vertex mapped")).collect();
    let class_structure_ok = core_images.iter().enumerate().all(|(i, &x)| {
        let class = target.class_of(x);
        if i < prefix {
            class == TargetClass::Reserved
        } else {
            class == TargetClass::Free(psi[i] - 1)
        }
    }) && reserved_injective(&h, target);
    let psi_palette = psi.iter().copied().max().unwrap_or(0);
    trace(&mut log, on, || {
        format!(
            "core mapped reserved={prefix} extended={} psi_palette={psi_palette}",
            core_order.len() - prefix
        )
    });
    if !validate(&reduction.graph, &reduction.alive, &h, target) {
        return Err(PipelineError::Defect("core map does not validate".into()));
    }

    // (f) replay
    let mut graph = reduction.graph.clone();
    let mut alive = reduction.alive.clone();
    let mut replay_checks = 0;
    for (idx, step) in reduction.steps.iter().enumerate().rev() {
        match step {
            ReductionStep::RemoveLowDegreeVertex { vertex, neighbours, completion } => {
                for &(a, b) in completion {
                    graph.remove_edge(a, b);
                }
                for &(u, sign) in neighbours {
                    let (a, b) = match sign {
                        crate::graph::Sign::Out => (*vertex, u),
                        crate::graph::Sign::In => (u, *vertex),
                    };
                    graph.add_arc(a, b).map_err(|e| PipelineError::Defect(e.to_string()))?;
                }
                alive[*vertex] = true;
                let images: Vec<T::Vertex> =
                    neighbours.iter().map(|&(u, _)| h.get(u).expect("neighbour mapped")).collect();
                let class = class_avoiding(target, &images, *vertex)?;
                let x = extend_vertex(&graph, &mut h, *vertex, class, target)?;
                trace(&mut log, on, || format!("replay {idx} vertex {vertex} -> {x:?}"));
            }
            ReductionStep::RemoveLowDegreeEdge { light, other, arc, .. } => {
                graph.add_arc(arc.0, arc.1).map_err(|e| PipelineError::Defect(e.to_string()))?;
                let (v, w) = (*light, *other);
                let a_images: Vec<T::Vertex> = graph
                    .neighbours(v)
                    .into_iter()
                    .filter(|&u| u != w)
                    .map(|u| h.get(u).expect("neighbour mapped"))
                    .collect();
                // re-map w away from A, keeping its signs toward its other neighbours
                let b_constraints: Vec<(T::Vertex, crate::graph::Sign)> = h
                    .constraints(&graph, w)
                    .into_iter()
                    .zip(graph.neighbours(w))
                    .filter(|&(_, u)| u != v)
                    .map(|(c, _)| c)
                    .collect();
                let mut avoid = a_images.clone();
                avoid.extend(b_constraints.iter().map(|&(x, _)| x));
                let w_class = class_avoiding(target, &avoid, w)?;
                let z = target.realise(w_class, &b_constraints).map_err(ExtendError::from)?;
                h.set(w, z);
                // then v against A and z
                let mut v_images = a_images;
                v_images.push(z);
                let v_class = class_avoiding(target, &v_images, v)?;
                let x = extend_vertex(&graph, &mut h, v, v_class, target)?;
                trace(&mut log, on, || format!("replay {idx} edge {v}-{w} -> {x:?}, {z:?}"));
            }
        }
        if options.check_replay {
            replay_checks += 1;
            if !validate(&graph, &alive, &h, target) {
                return Err(PipelineError::Defect(format!("partial map invalid after replaying step {idx}")));
            }
        }
    }

    // (g)
    let valid = validate(g, &vec![true; g.n()], &h, target);
    if !valid {
        return Err(PipelineError::Defect("final map does not validate".into()));
    }
    let report = PipelineReport {
        valid,
        colours_used: h.distinct_images(),
        reduction_steps: reduction.steps.len(),
        core_size: keep.len(),
        psi_palette,
    };
    trace(&mut log, on, || format!("done colours={}", report.colours_used));
    Ok(PipelineOutcome {
        homomorphism: h,
        report,
        steps: reduction.steps,
        core_order,
        psi,
        core_images,
        discharge,
        class_structure_ok,
        replay_checks,
        trace: log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::full::LazyTarget;
    use crate::graph::generate::{random_orientation, toroidal_grid, triangular_torus};
    use crate::graph::SimpleGraph;

    fn run(g: &OrientedGraph, genus: usize) -> PipelineOutcome<crate::full::LazyVertex> {
        let params = SurfaceParams::new(genus).unwrap();
        let mut t = LazyTarget::for_params(&params, 11);
        colour_surface_graph(g, genus, &mut t, PipelineOptions { check_replay: true, trace: false }).unwrap()
    }

    #[test]
    fn single_arc() {
        let g = OrientedGraph::from_arcs(2, [(0, 1)]).unwrap();
        let out = run(&g, 2);
        assert!(out.report.valid);
        assert_eq!(out.report.colours_used, 2);
    }

    #[test]
    fn empty_graph() {
        let out = run(&OrientedGraph::new(0), 2);
        assert_eq!(
            out.report,
            PipelineReport { valid: true, colours_used: 0, reduction_steps: 0, core_size: 0, psi_palette: 0 }
        );
    }

    #[test]
    fn grid_and_six_regular_torus() {
        let grid = random_orientation(&toroidal_grid(5, 5), 3);
        assert!(run(&grid, 2).report.valid);
        let tri = random_orientation(&triangular_torus(6, 6), 3);
        let out = run(&tri, 2);
        assert_eq!(out.report.core_size, 36);
        assert!(out.class_structure_ok);
        assert!(out.report.psi_palette >= 1);
    }

    #[test]
    fn k7_is_accepted() {
        let g = random_orientation(&SimpleGraph::complete(7), 5);
        let out = run(&g, 2);
        assert!(out.report.valid);
    }

    #[test]
    fn dense_graph_with_small_genus_is_refused() {
        let g = random_orientation(&SimpleGraph::complete(14), 1);
        let params = SurfaceParams::new(2).unwrap();
        let mut t = LazyTarget::for_params(&params, 0);
        let err = colour_surface_graph(&g, 2, &mut t, PipelineOptions::default()).unwrap_err();
        assert!(matches!(err, PipelineError::GenusAssumptionViolated(_)));
    }
}
