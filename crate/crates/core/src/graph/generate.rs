//! Graph families, random orientations, and exhaustive enumerators.
//!
//! Every randomized generator takes an explicit seed and is deterministic
//! for it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{canonical_code, GraphError, OrientedGraph, SimpleGraph};
use crate::rng;

/// Largest order for which the isomorph-free tournament list is built.
pub const MAX_TOURNAMENT_ORDER: usize = 7;
/// Largest order for which isomorph-free simple graphs are listed.
pub const MAX_SIMPLE_ISO_ORDER: usize = 6;

/// Single-graph families understood by [`generate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Random tournament on `n` vertices.
    CompleteTournament {
        n: usize,
    },
    TransitiveTournament {
        n: usize,
    },
    DirectedCycle {
        n: usize,
    },
    /// Random orientation of a square toroidal grid (4-regular).
    ToroidalGrid {
        rows: usize,
        cols: usize,
    },
    /// Random orientation of a triangulated torus (6-regular).
    TriangularTorus {
        rows: usize,
        cols: usize,
    },
    /// Random orientation of a random planar triangulation.
    PlanarTriangulation {
        n: usize,
    },
    /// Random orientation of a random planar 3-degenerate graph.
    PlanarDegenerate {
        n: usize,
    },
    /// Random orientation of a random `d`-degenerate graph.
    Degenerate {
        n: usize,
        d: usize,
    },
    /// Random orientation of `G(n, p)`.
    Random {
        n: usize,
        p: f64,
    },
    /// Random orientation of the complete graph `K_n`.
    Complete {
        n: usize,
    },
}

pub fn generate(family: &Family, seed: u64) -> OrientedGraph {
    let s = rng::derive(seed, 1);
    match *family {
        Family::CompleteTournament { n } => random_tournament(n, seed),
        Family::TransitiveTournament { n } => transitive_tournament(n),
        Family::DirectedCycle { n } => directed_cycle(n),
        Family::ToroidalGrid { rows, cols } => random_orientation(&toroidal_grid(rows, cols), seed),
        Family::TriangularTorus { rows, cols } => random_orientation(&triangular_torus(rows, cols), seed),
        Family::PlanarTriangulation { n } => {
            random_orientation(&random_planar_triangulation(n, 2 * n, s), seed)
        }
        Family::PlanarDegenerate { n } => random_orientation(&random_planar_degenerate(n, s), seed),
        Family::Degenerate { n, d } => random_orientation(&random_degenerate(n, d, s), seed),
        Family::Random { n, p } => random_orientation(&random_graph(n, p, s), seed),
        Family::Complete { n } => random_orientation(&SimpleGraph::complete(n), seed),
    }
}

pub fn transitive_tournament(n: usize) -> OrientedGraph {
    OrientedGraph::from_arcs(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("transitive tournament")
}

pub fn random_tournament(n: usize, seed: u64) -> OrientedGraph {
    random_orientation(&SimpleGraph::complete(n), seed)
}

pub fn directed_cycle(n: usize) -> OrientedGraph {
    assert!(n >= 3, "directed cycle needs at least 3 vertices");
    OrientedGraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).expect("directed cycle")
}

/// Orients each edge of `g` by an independent fair coin.
pub fn random_orientation(g: &SimpleGraph, seed: u64) -> OrientedGraph {
    let mut r = rng::stream(seed);
    let arcs: Vec<_> = g.edges().map(|(u, v)| if r.random_bool(0.5) { (u, v) } else { (v, u) }).collect();
    OrientedGraph::from_arcs(g.n(), arcs).expect("orientation of a simple graph")
}

/// Orientation where bit `i` of `mask` reverses the `i`-th edge of `edges`
/// (which are given as `(low, high)`).
pub fn orientation_from_mask(n: usize, edges: &[(usize, usize)], mask: u64) -> OrientedGraph {
    let arcs = edges.iter().enumerate().map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) });
    OrientedGraph::from_arcs(n, arcs).expect("orientation of a simple graph")
}

pub fn path(n: usize) -> SimpleGraph {
    SimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> SimpleGraph {
    SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn octahedron() -> SimpleGraph {
    // K_{2,2,2}: opposite pairs (0,1), (2,3), (4,5)
    SimpleGraph::from_edges(
        6,
        (0..6).flat_map(|u| (u + 1..6).filter(move |&v| u / 2 != v / 2).map(move |v| (u, v))),
    )
}

pub fn icosahedron() -> SimpleGraph {
    // apex 0, upper ring 1..=5, lower ring 6..=10, apex 11
    let mut g = SimpleGraph::new(12);
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let low = 6 + i;
        let low_next = 6 + (i + 1) % 5;
        g.add_edge(0, up);
        g.add_edge(up, up_next);
        g.add_edge(up, low);
        g.add_edge(up_next, low);
        g.add_edge(low, low_next);
        g.add_edge(low, 11);
    }
    g
}

/// `rows x cols` square grid with wrap-around; 4-regular for `rows, cols >= 3`.
pub fn toroidal_grid(rows: usize, cols: usize) -> SimpleGraph {
    assert!(rows >= 3 && cols >= 3, "toroidal grid needs both sides >= 3");
    let id = |r: usize, c: usize| (r % rows) * cols + (c % cols);
    let mut g = SimpleGraph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            g.add_edge(id(r, c), id(r, c + 1));
            g.add_edge(id(r, c), id(r + 1, c));
        }
    }
    g
}

/// Square toroidal grid plus one diagonal per cell: a 6-regular
/// triangulation of the torus for `rows, cols >= 3`.
pub fn triangular_torus(rows: usize, cols: usize) -> SimpleGraph {
    let mut g = toroidal_grid(rows, cols);
    let id = |r: usize, c: usize| (r % rows) * cols + (c % cols);
    for r in 0..rows {
        for c in 0..cols {
            g.add_edge(id(r, c), id(r + 1, c + 1));
        }
    }
    g
}

pub fn random_tree(n: usize, seed: u64) -> SimpleGraph {
    let mut r = rng::stream(seed);
    SimpleGraph::from_edges(n, (1..n).map(|v| (r.random_range(0..v), v)))
}

/// Each vertex `v` joins up to `d` distinct earlier vertices, so the result
/// is `d`-degenerate.
pub fn random_degenerate(n: usize, d: usize, seed: u64) -> SimpleGraph {
    let mut r = rng::stream(seed);
    let mut g = SimpleGraph::new(n);
    let mut earlier: Vec<usize> = Vec::with_capacity(n);
    for v in 0..n {
        let k = r.random_range(0..=d.min(v));
        earlier.shuffle(&mut r);
        for &u in earlier.iter().take(k) {
            g.add_edge(u, v);
        }
        earlier.push(v);
    }
    g
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> SimpleGraph {
    let mut r = rng::stream(seed);
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random stacked triangulation (repeatedly insert a vertex into a random
/// face). Returns the graph and its list of triangular faces.
fn stacked_triangulation(n: usize, seed: u64) -> (SimpleGraph, Vec<[usize; 3]>, Vec<[usize; 3]>) {
    assert!(n >= 3, "a triangulation needs at least 3 vertices");
    let mut r = rng::stream(seed);
    let mut g = SimpleGraph::from_edges(n, [(0, 1), (1, 2), (0, 2)]);
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    let mut attachments = Vec::with_capacity(n);
    for v in 3..n {
        let f = r.random_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(f);
        for x in [a, b, c] {
            g.add_edge(x, v);
        }
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
        attachments.push([a, b, c]);
    }
    (g, faces, attachments)
}

/// Planar triangulation: a stacked triangulation followed by `flips`
/// attempted random edge flips (each kept only if it preserves simplicity
/// and minimum degree 3).
pub fn random_planar_triangulation(n: usize, flips: usize, seed: u64) -> SimpleGraph {
    let (mut g, mut faces, _) = stacked_triangulation(n, seed);
    if n < 5 {
        return g;
    }
    let mut r = rng::stream(rng::derive(seed, 2));
    for _ in 0..flips {
        let f = r.random_range(0..faces.len());
        let side = r.random_range(0..3);
        let tri = faces[f];
        let (a, b) = (tri[side], tri[(side + 1) % 3]);
        let c = tri[(side + 2) % 3];
        let Some(h) = (0..faces.len()).find(|&h| h != f && faces[h].contains(&a) && faces[h].contains(&b))
        else {
            continue;
        };
        let d = *faces[h].iter().find(|&&x| x != a && x != b).expect("triangle");
        if c == d || g.has_edge(c, d) || g.degree(a) <= 3 || g.degree(b) <= 3 {
            continue;
        }
        g.remove_edge(a, b);
        g.add_edge(c, d);
        faces[f] = [a, c, d];
        faces[h] = [b, c, d];
    }
    g
}

/// Random spanning subgraph of a stacked triangulation: planar and
/// 3-degenerate.
pub fn random_planar_degenerate(n: usize, seed: u64) -> SimpleGraph {
    let (_, _, attachments) = stacked_triangulation(n.max(3), seed);
    let mut r = rng::stream(rng::derive(seed, 3));
    let mut g = SimpleGraph::new(n);
    if n >= 3 {
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            if r.random_bool(0.8) {
                g.add_edge(u, v);
            }
        }
    } else if n == 2 {
        g.add_edge(0, 1);
    }
    for (i, parents) in attachments.iter().enumerate() {
        for &p in parents {
            if r.random_bool(0.8) {
                g.add_edge(p, i + 3);
            }
        }
    }
    g
}

/// All `2^m` orientations of a simple graph, in mask order.
pub struct Orientations {
    n: usize,
    edges: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for Orientations {
    type Item = OrientedGraph;

    fn next(&mut self) -> Option<OrientedGraph> {
        if self.next >= self.end {
            return None;
        }
        let g = orientation_from_mask(self.n, &self.edges, self.next);
        self.next += 1;
        Some(g)
    }
}

/// Errors with [`GraphError::TooLarge`] when `2^m` exceeds `cap`.
pub fn orientations(g: &SimpleGraph, cap: u64) -> Result<Orientations, GraphError> {
    let m = g.edge_count();
    let size = 1u128 << m.min(127);
    if m >= 64 || size > cap as u128 {
        return Err(GraphError::TooLarge { size, cap: cap as u128 });
    }
    Ok(Orientations { n: g.n(), edges: g.edges().collect(), next: 0, end: size as u64 })
}

/// Every oriented graph on `n` labelled vertices: each of the `C(n,2)` pairs
/// is absent, forward, or backward, giving `3^C(n,2)` graphs.
pub struct AllOrientedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for AllOrientedGraphs {
    type Item = OrientedGraph;

    fn next(&mut self) -> Option<OrientedGraph> {
        if self.next >= self.end {
            return None;
        }
        let mut code = self.next;
        let mut g = OrientedGraph::new(self.n);
        for &(u, v) in &self.pairs {
            match code % 3 {
                1 => g.add_arc(u, v).expect("fresh pair"),
                2 => g.add_arc(v, u).expect("fresh pair"),
                _ => {}
            }
            code /= 3;
        }
        self.next += 1;
        Some(g)
    }
}

pub fn all_oriented_graphs(n: usize, cap: u64) -> Result<AllOrientedGraphs, GraphError> {
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let size = 3u128.checked_pow(pairs.len() as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(GraphError::TooLarge { size, cap: cap as u128 });
    }
    Ok(AllOrientedGraphs { n, pairs, next: 0, end: size as u64 })
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // position of (i, j), i < j, in lexicographic order of pairs
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn tournament_code(g: &OrientedGraph, relabel: &[usize]) -> u64 {
    let n = relabel.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_arc(relabel[i], relabel[j]) {
                code |= 1 << pair_index(n, i, j);
            }
        }
    }
    code
}

fn canonical_tournament(g: &OrientedGraph) -> (u64, OrientedGraph) {
    let n = g.n();
    let score: Vec<u64> = (0..n).map(|v| g.out_degree(v) as u64).collect();
    let key: Vec<u64> =
        (0..n).map(|v| score[v] * 64 + g.out_neighbours(v).map(|u| score[u]).sum::<u64>()).collect();
    let (code, relabel) = canonical_code(&key, |p| tournament_code(g, p));
    let mut label = vec![0; n];
    for (i, &v) in relabel.iter().enumerate() {
        label[v] = i;
    }
    let canon = OrientedGraph::from_arcs(n, g.arcs().map(|(u, v)| (label[u], label[v])))
        .expect("relabelled tournament");
    (code, canon)
}

/// Pairwise non-isomorphic tournaments on `n <= 7` vertices, each in its
/// canonical labelling, sorted by canonical code.
pub fn tournaments(n: usize) -> Result<&'static [OrientedGraph], GraphError> {
    static CACHE: OnceLock<Vec<Vec<OrientedGraph>>> = OnceLock::new();
    if n > MAX_TOURNAMENT_ORDER {
        return Err(GraphError::TooLarge {
            size: 1u128 << (n * (n - 1) / 2).min(127),
            cap: 1u128 << (MAX_TOURNAMENT_ORDER * (MAX_TOURNAMENT_ORDER - 1) / 2),
        });
    }
    let all = CACHE.get_or_init(|| {
        let mut levels = vec![vec![OrientedGraph::new(0)]];
        for order in 1..=MAX_TOURNAMENT_ORDER {
            let mut found = BTreeMap::new();
            for t in &levels[order - 1] {
                for mask in 0u32..(1 << (order - 1)) {
                    let v = order - 1;
                    let mut g = OrientedGraph::new(order);
                    for (a, b) in t.arcs() {
                        g.add_arc(a, b).expect("copied arc");
                    }
                    for u in 0..v {
                        let (a, b) = if mask >> u & 1 == 1 { (v, u) } else { (u, v) };
                        g.add_arc(a, b).expect("new arc");
                    }
                    let (code, canon) = canonical_tournament(&g);
                    found.entry(code).or_insert(canon);
                }
            }
            levels.push(found.into_values().collect());
        }
        levels
    });
    Ok(&all[n])
}

fn simple_code(g: &SimpleGraph, relabel: &[usize]) -> u64 {
    let n = relabel.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(relabel[i], relabel[j]) {
                code |= 1 << pair_index(n, i, j);
            }
        }
    }
    code
}

/// Pairwise non-isomorphic simple graphs on `n <= 6` vertices, sorted by
/// edge count and then canonical code.
pub fn simple_graphs_up_to_iso(n: usize) -> Result<Vec<SimpleGraph>, GraphError> {
    if n > MAX_SIMPLE_ISO_ORDER {
        return Err(GraphError::TooLarge { size: 1u128 << (n * (n - 1) / 2).min(127), cap: 1u128 << 15 });
    }
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut found = BTreeMap::new();
    for mask in 0u64..(1 << pairs.len()) {
        let g = SimpleGraph::from_edges(
            n,
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
        );
        let deg: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
        let key: Vec<u64> =
            (0..n).map(|v| deg[v] * 64 + g.neighbours(v).map(|u| deg[u]).sum::<u64>()).collect();
        let (code, _) = canonical_code(&key, |p| simple_code(&g, p));
        found.entry((g.edge_count(), code)).or_insert(g);
    }
    Ok(found.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitive_three() {
        let g = transitive_tournament(3);
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn cycle_five() {
        let g = directed_cycle(5);
        assert_eq!(g.arcs().count(), 5);
        assert!((0..5).all(|i| g.has_arc(i, (i + 1) % 5)));
    }

    #[test]
    fn tournament_counts_match_known_sequence() {
        // OEIS A000568
        let counts: Vec<usize> = (0..=6).map(|n| tournaments(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 4, 12, 56]);
        assert!(tournaments(8).is_err());
    }

    #[test]
    fn simple_graph_counts_match_known_sequence() {
        // OEIS A000088
        let counts: Vec<usize> = (0..=5).map(|n| simple_graphs_up_to_iso(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(all_oriented_graphs(3, 1000).unwrap().count(), 27);
        assert!(all_oriented_graphs(5, 1000).is_err());
        let k4 = SimpleGraph::complete(4);
        assert_eq!(orientations(&k4, 64).unwrap().count(), 64);
        assert!(orientations(&k4, 63).is_err());
    }

    #[test]
    fn named_graphs_have_expected_degrees() {
        let oct = octahedron();
        assert!((0..6).all(|v| oct.degree(v) == 4));
        let ico = icosahedron();
        assert_eq!(ico.edge_count(), 30);
        assert!((0..12).all(|v| ico.degree(v) == 5));
        let grid = toroidal_grid(4, 5);
        assert!((0..20).all(|v| grid.degree(v) == 4));
        let tri = triangular_torus(4, 5);
        assert!((0..20).all(|v| tri.degree(v) == 6));
    }

    #[test]
    fn planar_triangulations_have_three_n_minus_six_edges() {
        for seed in 0..5 {
            let g = random_planar_triangulation(40, 80, seed);
            assert_eq!(g.edge_count(), 3 * 40 - 6);
            assert!((0..40).all(|v| g.degree(v) >= 3));
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let f = Family::PlanarTriangulation { n: 30 };
        assert_eq!(generate(&f, 9), generate(&f, 9));
        let f = Family::Degenerate { n: 30, d: 3 };
        assert_eq!(generate(&f, 4), generate(&f, 4));
    }
}
