//! Oriented graphs, their underlying simple graphs, and the predicates shared
//! by every other module.
//!
//! Adjacency is kept as two bitset rows per vertex (out-set and in-set), so an
//! arc query is O(1) and neighbourhood intersections run word-parallel.

mod canon;
pub mod generate;
pub mod io;
mod ordering;

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::canonical_code;
pub use ordering::{degeneracy_ordering, VertexOrdering};

/// Ways an arc set can fail to describe an oriented graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("anti-parallel arcs between {0} and {1}")]
    AntiParallel(usize, usize),
    #[error("duplicate arc {0} -> {1}")]
    Duplicate(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid oriented graph: {0}")]
    Invariant(#[from] InvariantViolation),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {probe} is not adjacent to {other}")]
    NonAdjacent { probe: usize, other: usize },
    #[error("enumeration of {size} objects exceeds the cap of {cap}")]
    TooLarge { size: u128, cap: u128 },
}

/// Direction of the arc between a probe vertex and one reference vertex.
///
/// `Out` is the `+1` entry (arc leaves the probe), `In` is `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Out,
    In,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Out => 1,
            Sign::In => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Out => Sign::In,
            Sign::In => Sign::Out,
        }
    }
}

/// Sign pattern of a probe vertex toward an ordered list of its neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrientationVector(pub Vec<Sign>);

impl OrientationVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<i8> {
        self.0.iter().map(|s| s.value()).collect()
    }
}

/// A loopless digraph with at most one arc per vertex pair.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
    arc_count: usize,
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrientedGraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl OrientedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        OrientedGraph {
            n,
            out: vec![FixedBitSet::with_capacity(n); n],
            inn: vec![FixedBitSet::with_capacity(n); n],
            arc_count: 0,
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, InvariantViolation>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = OrientedGraph::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), InvariantViolation> {
        for x in [u, v] {
            if x >= self.n {
                return Err(InvariantViolation::OutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(InvariantViolation::Loop(u));
        }
        if self.out[u].contains(v) {
            return Err(InvariantViolation::Duplicate(u, v));
        }
        if self.out[v].contains(u) {
            return Err(InvariantViolation::AntiParallel(u, v));
        }
        self.out[u].insert(v);
        self.inn[v].insert(u);
        self.arc_count += 1;
        Ok(())
    }

    /// Removes the arc between `u` and `v` in whichever direction it runs,
    /// returning that direction as `(tail, head)`.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Option<(usize, usize)> {
        let (a, b) = if self.has_arc(u, v) {
            (u, v)
        } else if self.has_arc(v, u) {
            (v, u)
        } else {
            return None;
        };
        self.out[a].set(b, false);
        self.inn[b].set(a, false);
        self.arc_count -= 1;
        Some((a, b))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].contains(v)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Sign of the arc between `probe` and `other`, if they are adjacent.
    pub fn sign(&self, probe: usize, other: usize) -> Option<Sign> {
        if self.has_arc(probe, other) {
            Some(Sign::Out)
        } else if self.has_arc(other, probe) {
            Some(Sign::In)
        } else {
            None
        }
    }

    pub fn out_set(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    pub fn in_set(&self, v: usize) -> &FixedBitSet {
        &self.inn[v]
    }

    pub fn out_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].ones()
    }

    pub fn in_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inn[v].ones()
    }

    /// Neighbours in either direction, ascending.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut set = self.out[v].clone();
        set.union_with(&self.inn[v]);
        set.ones().collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones(..)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].ones().map(move |v| (u, v)))
    }

    pub fn underlying(&self) -> SimpleGraph {
        let mut s = SimpleGraph::new(self.n);
        for (u, v) in self.arcs() {
            s.add_edge(u, v);
        }
        s
    }

    /// `G - E(G[U])`: drop every arc with both ends in `set`.
    pub fn without_arcs_within(&self, set: &[usize]) -> OrientedGraph {
        let mut inside = FixedBitSet::with_capacity(self.n);
        for &u in set {
            inside.insert(u);
        }
        let kept = self.arcs().filter(|&(u, v)| !(inside.contains(u) && inside.contains(v)));
        OrientedGraph::from_arcs(self.n, kept).expect("subgraph of an oriented graph")
    }

    /// Same graph with the direction of every arc flipped.
    pub fn reversed(&self) -> OrientedGraph {
        OrientedGraph::from_arcs(self.n, self.arcs().map(|(u, v)| (v, u)))
            .expect("reversal keeps the invariants")
    }

    /// Vertices reachable from `v` along a directed path of length 1 or 2.
    fn reach_within_two(&self, v: usize) -> FixedBitSet {
        let mut reach = self.out[v].clone();
        for x in self.out[v].ones() {
            reach.union_with(&self.out[x]);
        }
        reach.set(v, false);
        reach
    }
}

/// Entry `i` is `Out` iff the arc goes from `v` to `order[i]`.
pub fn orientation_vector(
    g: &OrientedGraph,
    order: &[usize],
    v: usize,
) -> Result<OrientationVector, GraphError> {
    order
        .iter()
        .map(|&u| g.sign(v, u).ok_or(GraphError::NonAdjacent { probe: v, other: u }))
        .collect::<Result<Vec<_>, _>>()
        .map(OrientationVector)
}

/// Undirected graph joining every pair at directed distance 1 or 2 in
/// either direction.
pub fn directed_square(g: &OrientedGraph) -> SimpleGraph {
    let mut sq = SimpleGraph::new(g.n);
    for u in 0..g.n {
        for w in g.reach_within_two(u).ones() {
            sq.add_edge(u, w);
        }
    }
    sq
}

/// Every pair is joined by an arc or a directed 2-path in some direction.
pub fn is_oriented_clique(g: &OrientedGraph) -> bool {
    directed_square(g).is_complete()
}

/// A simple undirected graph stored as symmetric bitset rows.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<FixedBitSet>,
    edge_count: usize,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { n, adj: vec![FixedBitSet::with_capacity(n); n], edge_count: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        SimpleGraph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Inserts `{u,v}`; loops are ignored and re-insertion is a no-op.
    /// Returns whether the edge is new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        if u == v || self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edge_count += 1;
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
        self.edge_count -= 1;
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbour_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * self.n.saturating_sub(1) / 2
    }

    /// Vertices at distance exactly 1 or 2 from `v`.
    pub fn ball_two(&self, v: usize) -> FixedBitSet {
        let mut ball = self.adj[v].clone();
        for x in self.adj[v].ones() {
            ball.union_with(&self.adj[x]);
        }
        ball.set(v, false);
        ball
    }

    /// Checks that `colours` is a proper vertex colouring.
    pub fn is_proper_colouring(&self, colours: &[usize]) -> bool {
        colours.len() == self.n && self.edges().all(|(u, v)| colours[u] != colours[v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> OrientedGraph {
        OrientedGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_invalid_arcs() {
        let mut g = OrientedGraph::new(3);
        assert_eq!(g.add_arc(1, 1), Err(InvariantViolation::Loop(1)));
        g.add_arc(0, 1).unwrap();
        assert_eq!(g.add_arc(0, 1), Err(InvariantViolation::Duplicate(0, 1)));
        assert_eq!(g.add_arc(1, 0), Err(InvariantViolation::AntiParallel(1, 0)));
        assert!(matches!(g.add_arc(0, 3), Err(InvariantViolation::OutOfRange { .. })));
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn orientation_vector_reads_arcs() {
        let g = path3();
        let v = orientation_vector(&g, &[0, 2], 1).unwrap();
        assert_eq!(v.values(), vec![-1, 1]);
        assert!(orientation_vector(&g, &[], 1).unwrap().is_empty());
        assert_eq!(orientation_vector(&g, &[2], 0), Err(GraphError::NonAdjacent { probe: 0, other: 2 }));
    }

    #[test]
    fn square_of_path_is_triangle() {
        let sq = directed_square(&path3());
        assert!(sq.is_complete());
        assert_eq!(sq.edge_count(), 3);
        assert!(is_oriented_clique(&path3()));
    }

    #[test]
    fn square_of_edgeless_is_edgeless() {
        let sq = directed_square(&OrientedGraph::new(4));
        assert_eq!(sq.edge_count(), 0);
    }

    #[test]
    fn transitive_triangle_is_clique() {
        let g = OrientedGraph::from_arcs(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(is_oriented_clique(&g));
    }

    #[test]
    fn removing_arcs_inside_a_set() {
        let g = OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = g.without_arcs_within(&[0, 1, 2]);
        assert_eq!(h.arcs().collect::<Vec<_>>(), vec![(2, 3), (3, 0)]);
    }
}
