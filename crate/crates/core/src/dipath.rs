//! Constructive 2-dipath colouring.
//!
//! [`greedy_two_dipath`] colours along a vertex order and never uses more
//! than `2dΔ − Δ − d² + d + 1` colours, where `d` is the largest back-degree
//! of the order and `Δ` the maximum degree. [`stratified_two_dipath`] gives a
//! vertex set singleton colours on top of a colouring of the graph with the
//! arcs inside that set removed, and [`surface_two_dipath`] chains the two to
//! colour a graph of Euler genus at most `g` with at most `138g − 162`
//! colours.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{degeneracy_ordering, OrientedGraph, VertexOrdering};
use crate::params::SurfaceParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DipathError {
    #[error("inner colouring is not a 2-dipath colouring of the stripped graph")]
    InvalidInner,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(
        "vertex {vertex} has back-degree {back_degree} > 6 after stripping; the genus assertion is false"
    )]
    DegeneracyViolation { vertex: usize, back_degree: usize },
}

/// A colouring with colours `1..=palette_size` in which the ends of every
/// directed path of length 1 or 2 differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DipathColouring {
    pub colours: Vec<usize>,
    pub palette_size: usize,
}

impl DipathColouring {
    pub fn colours_used(&self) -> usize {
        let mut c = self.colours.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn is_valid_for(&self, g: &OrientedGraph) -> bool {
        self.colours.len() == g.n()
            && self.colours.iter().all(|&c| (1..=self.palette_size).contains(&c))
            && two_dipath_conflicts(g, &self.colours).is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct ColouringJson {
    palette: usize,
    colours: BTreeMap<String, usize>,
}

impl Serialize for DipathColouring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ColouringJson {
            palette: self.palette_size,
            colours: self.colours.iter().enumerate().map(|(v, &c)| (v.to_string(), c)).collect(),
        }
        .serialize(s)
    }
}

/// Pairs `(u, w)` with `u < w`, equal colours, and directed distance 1 or 2
/// between them in some direction. Distances come from a breadth-first
/// search per vertex, independent of the bitset square used elsewhere.
pub fn two_dipath_conflicts(g: &OrientedGraph, colours: &[usize]) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut conflicts = Vec::new();
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if dist[x] == 2 {
                continue;
            }
            for y in g.out_neighbours(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        for t in 0..n {
            if t != s && dist[t] <= 2 && colours[s] == colours[t] {
                conflicts.push((s.min(t), s.max(t)));
            }
        }
    }
    conflicts.sort_unstable();
    conflicts.dedup();
    conflicts
}

/// `2dΔ − Δ − d² + d + 1`, clamped below at 1.
pub fn greedy_palette_bound(d: usize, max_degree: usize) -> usize {
    let (d, delta) = (d as i64, max_degree as i64);
    (2 * d * delta - delta - d * d + d + 1).max(1) as usize
}

/// Colours vertices in `ord.order`, giving each the least colour not used by
/// any already-coloured vertex within undirected distance two. This keeps
/// the coloured neighbours of every uncoloured vertex pairwise distinct.
///
/// Panics if the palette exceeds [`greedy_palette_bound`], which would be a
/// bug rather than an input error.
pub fn greedy_two_dipath(g: &OrientedGraph, ord: &VertexOrdering) -> DipathColouring {
    let n = g.n();
    let sq = g.underlying();
    let mut colours = vec![0usize; n];
    let mut palette = 0;
    for &v in &ord.order {
        let ball = sq.ball_two(v);
        let mut taken: Vec<usize> = ball.ones().map(|u| colours[u]).filter(|&c| c != 0).collect();
        taken.sort_unstable();
        taken.dedup();
        let c = taken.iter().enumerate().find(|&(i, &t)| t != i + 1).map_or(taken.len() + 1, |(i, _)| i + 1);
        colours[v] = c;
        palette = palette.max(c);
    }
    let bound = greedy_palette_bound(ord.degeneracy, g.max_degree());
    assert!(palette <= bound || n == 0, "greedy used {palette} colours, above the proven bound {bound}");
    DipathColouring { colours, palette_size: palette }
}

/// Keeps `inner` outside `set` and gives the vertices of `set` (in sorted
/// order) fresh colours `inner.palette_size + 1 ..`.
pub fn stratified_two_dipath(
    g: &OrientedGraph,
    set: &[usize],
    inner: &DipathColouring,
) -> Result<DipathColouring, DipathError> {
    let stripped = g.without_arcs_within(set);
    if !inner.is_valid_for(&stripped) {
        return Err(DipathError::InvalidInner);
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut colours = inner.colours.clone();
    for (i, &u) in sorted.iter().enumerate() {
        colours[u] = inner.palette_size + i + 1;
    }
    Ok(DipathColouring { colours, palette_size: inner.palette_size + sorted.len() })
}

/// Result of [`surface_two_dipath`], keeping the intermediate pieces.
#[derive(Debug, Clone)]
pub struct SurfaceColouring {
    pub colouring: DipathColouring,
    pub ordering: VertexOrdering,
    /// The first `min(6g − 1, n)` vertices of the ordering.
    pub stratum: Vec<usize>,
    pub inner_palette: usize,
}

/// 2-dipath colouring of a graph whose Euler genus is asserted to be at most
/// `g`, using at most `138g − 162` colours.
pub fn surface_two_dipath(g: &OrientedGraph, genus: usize) -> Result<SurfaceColouring, DipathError> {
    let params = SurfaceParams::new(genus).map_err(|e| DipathError::PreconditionViolated(e.to_string()))?;
    let delta = g.max_degree();
    if delta > params.max_degree {
        return Err(DipathError::PreconditionViolated(format!(
            "maximum degree {delta} exceeds 12g - 12 = {}",
            params.max_degree
        )));
    }
    let ordering = degeneracy_ordering(g);
    let cut = params.stratum_size.min(g.n());
    let stratum: Vec<usize> = ordering.order[..cut].to_vec();
    let stripped = g.without_arcs_within(&stratum);
    let stripped_ord = VertexOrdering::from_order(&stripped, ordering.order.clone());
    if let Some(&v) = stripped_ord
        .order
        .iter()
        .find(|&&v| stripped_ord.back_degree(&stripped, v) > params.stripped_degeneracy)
    {
        return Err(DipathError::DegeneracyViolation {
            vertex: v,
            back_degree: stripped_ord.back_degree(&stripped, v),
        });
    }
    let inner = greedy_two_dipath(&stripped, &stripped_ord);
    let colouring = if cut == g.n() {
        // the stratum is everything: singleton colours only
        let mut colours = vec![0; g.n()];
        let mut sorted = stratum.clone();
        sorted.sort_unstable();
        for (i, &v) in sorted.iter().enumerate() {
            colours[v] = i + 1;
        }
        DipathColouring { colours, palette_size: g.n() }
    } else {
        stratified_two_dipath(g, &stratum, &inner)?
    };
    assert!(
        colouring.palette_size <= params.free_classes,
        "palette {} exceeds 138g - 162 = {}",
        colouring.palette_size,
        params.free_classes
    );
    Ok(SurfaceColouring { colouring, ordering, stratum, inner_palette: inner.palette_size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn bound_formula() {
        assert_eq!(greedy_palette_bound(1, 3), 4);
        assert_eq!(greedy_palette_bound(2, 3), 8);
        assert_eq!(greedy_palette_bound(6, 12), 103);
        assert_eq!(greedy_palette_bound(0, 0), 1);
    }

    #[test]
    fn edgeless_uses_one_colour() {
        let g = OrientedGraph::new(5);
        let c = greedy_two_dipath(&g, &degeneracy_ordering(&g));
        assert_eq!(c.palette_size, 1);
        assert!(c.is_valid_for(&g));
    }

    #[test]
    fn forest_within_four_colours() {
        for seed in 0..20 {
            let tree = generate::random_tree(30, seed);
            if tree.max_degree() != 3 {
                continue;
            }
            let g = generate::random_orientation(&tree, seed);
            let c = greedy_two_dipath(&g, &degeneracy_ordering(&g));
            assert!(c.palette_size <= 4);
            assert!(c.is_valid_for(&g));
        }
    }

    #[test]
    fn conflicts_detected() {
        let g = OrientedGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(two_dipath_conflicts(&g, &[1, 2, 1]), vec![(0, 2)]);
        assert!(two_dipath_conflicts(&g, &[1, 2, 3]).is_empty());
        // 0 -> 1 <- 2 is not a dipath, so 0 and 2 may share
        let h = OrientedGraph::from_arcs(3, [(0, 1), (2, 1)]).unwrap();
        assert!(two_dipath_conflicts(&h, &[1, 2, 1]).is_empty());
    }

    #[test]
    fn stratified_edge_cases() {
        let g = generate::random_orientation(&crate::graph::SimpleGraph::complete(4), 3);
        let inner = greedy_two_dipath(&g, &degeneracy_ordering(&g));
        assert_eq!(stratified_two_dipath(&g, &[], &inner).unwrap(), inner);
        let all = stratified_two_dipath(&g, &[0, 1, 2, 3], &inner).unwrap();
        assert_eq!(all.palette_size, 4 + inner.palette_size);
        assert!(all.is_valid_for(&g));
        let bogus = DipathColouring { colours: vec![1; 4], palette_size: 1 };
        assert_eq!(stratified_two_dipath(&g, &[0, 1], &bogus), Err(DipathError::InvalidInner));
    }

    #[test]
    fn surface_rejects_high_degree() {
        let star = crate::graph::SimpleGraph::from_edges(14, (1..14).map(|v| (0, v)));
        let g = generate::random_orientation(&star, 1);
        assert!(matches!(surface_two_dipath(&g, 2), Err(DipathError::PreconditionViolated(_))));
        assert!(matches!(surface_two_dipath(&g, 1), Err(DipathError::PreconditionViolated(_))));
    }

    #[test]
    fn serializes_as_palette_and_map() {
        let c = DipathColouring { colours: vec![1, 2], palette_size: 2 };
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"palette":2,"colours":{"0":1,"1":2}}"#);
    }
}
