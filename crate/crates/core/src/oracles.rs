//! Brute-force ground truth: exact oriented chromatic number, exact 2-dipath
//! chromatic number, and minimum-arc oriented cliques.
//!
//! These are exponential by nature and guarded by hard caps.

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::graph::generate::{self, MAX_SIMPLE_ISO_ORDER, MAX_TOURNAMENT_ORDER};
use crate::graph::{directed_square, is_oriented_clique, OrientedGraph, SimpleGraph};
use crate::rng;

/// Largest edge count accepted by [`exact_oriented_chromatic_simple`].
pub const MAX_SIMPLE_EDGES: usize = 15;
/// Largest order accepted by [`exact_two_dipath`].
pub const MAX_DIPATH_ORDER: usize = 20;
/// Largest order for the heuristic clique witness search.
pub const MAX_CLIQUE_WITNESS_ORDER: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} = {requested} exceeds the cap of {limit}")]
    CapExceeded { what: &'static str, requested: usize, limit: usize },
}

fn cap(what: &'static str, requested: usize, limit: usize) -> Result<(), OracleError> {
    if requested > limit {
        Err(OracleError::CapExceeded { what, requested, limit })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Vertex map into an explicit target.
    Homomorphism { target: OrientedGraph, map: Vec<usize> },
    /// Proper colouring of the directed square, colours `1..=value`.
    Colouring(Vec<usize>),
    /// An oriented clique realising the value.
    Clique(OrientedGraph),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub witness: Witness,
    pub nodes_explored: u64,
}

/// Every arc of `g` lands on an arc of `h` with the same direction.
pub fn validate_homomorphism(g: &OrientedGraph, h: &OrientedGraph, map: &[usize]) -> bool {
    map.len() == g.n() && map.iter().all(|&x| x < h.n()) && g.arcs().all(|(u, v)| h.has_arc(map[u], map[v]))
}

/// Backtracking search for an oriented homomorphism `g -> h`.
///
/// Source vertices are visited by decreasing degree and target vertices are
/// tried in index order.
pub fn find_homomorphism(g: &OrientedGraph, h: &OrientedGraph) -> (Option<Vec<usize>>, u64) {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut map = vec![usize::MAX; n];
    let mut nodes = 0u64;
    let found = extend(g, h, &order, 0, &mut map, &mut nodes);
    (found.then_some(map), nodes)
}

fn extend(
    g: &OrientedGraph,
    h: &OrientedGraph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    nodes: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for x in 0..h.n() {
        *nodes += 1;
        let fits = g.out_neighbours(v).all(|w| map[w] == usize::MAX || h.has_arc(x, map[w]))
            && g.in_neighbours(v).all(|w| map[w] == usize::MAX || h.has_arc(map[w], x));
        if fits {
            map[v] = x;
            if extend(g, h, order, depth + 1, map, nodes) {
                return true;
            }
            map[v] = usize::MAX;
        }
    }
    false
}

/// Smallest `k <= k_max` such that `g` maps to some tournament on `k`
/// vertices, or `None` when no such `k` exists.
///
/// Tournaments suffice as targets: any oriented target can be completed to
/// a tournament on the same vertex set without breaking a homomorphism.
pub fn exact_oriented_chromatic(g: &OrientedGraph, k_max: usize) -> Result<Option<SolveResult>, OracleError> {
    cap("k_max", k_max, MAX_TOURNAMENT_ORDER)?;
    if g.n() == 0 {
        return Ok(Some(SolveResult {
            value: 0,
            witness: Witness::Homomorphism { target: OrientedGraph::new(0), map: vec![] },
            nodes_explored: 0,
        }));
    }
    let mut nodes = 0;
    for k in 1..=k_max {
        let targets = generate::tournaments(k).expect("k within the tournament cap");
        for t in targets {
            let (map, explored) = find_homomorphism(g, t);
            nodes += explored;
            if let Some(map) = map {
                return Ok(Some(SolveResult {
                    value: k,
                    witness: Witness::Homomorphism { target: t.clone(), map },
                    nodes_explored: nodes,
                }));
            }
        }
    }
    Ok(None)
}

/// Maximum of [`exact_oriented_chromatic`] over all `2^m` orientations.
pub fn exact_oriented_chromatic_simple(g: &SimpleGraph) -> Result<SolveResult, OracleError> {
    cap("edge count", g.edge_count(), MAX_SIMPLE_EDGES)?;
    let k_max = g.n().min(MAX_TOURNAMENT_ORDER);
    let mut best: Option<SolveResult> = None;
    let mut nodes = 0;
    let all = generate::orientations(g, 1 << MAX_SIMPLE_EDGES).expect("edge count checked");
    for orientation in all {
        let res = exact_oriented_chromatic(&orientation, k_max)?.ok_or(OracleError::CapExceeded {
            what: "oriented chromatic number",
            requested: k_max + 1,
            limit: k_max,
        })?;
        nodes += res.nodes_explored;
        if best.as_ref().is_none_or(|b| res.value > b.value) {
            best = Some(res);
        }
    }
    let mut best = best.expect("at least one orientation");
    best.nodes_explored = nodes;
    Ok(best)
}

/// Exact chromatic number of the directed square by DSATUR-style branch and
/// bound, with a greedy clique lower bound and a DSATUR upper bound.
pub fn exact_two_dipath(g: &OrientedGraph) -> Result<SolveResult, OracleError> {
    cap("order", g.n(), MAX_DIPATH_ORDER)?;
    let sq = directed_square(g);
    let (value, colours, nodes) = exact_chromatic(&sq);
    Ok(SolveResult {
        value,
        witness: Witness::Colouring(colours.into_iter().map(|c| c + 1).collect()),
        nodes_explored: nodes,
    })
}

fn greedy_clique_size(g: &SimpleGraph) -> usize {
    (0..g.n())
        .map(|start| {
            let mut clique = vec![start];
            let mut candidates: Vec<usize> = g.neighbours(start).collect();
            candidates.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
            for v in candidates {
                if clique.iter().all(|&u| g.has_edge(u, v)) {
                    clique.push(v);
                }
            }
            clique.len()
        })
        .max()
        .unwrap_or(0)
}

/// Picks the uncoloured vertex with the most distinct neighbour colours,
/// then the highest degree, then the lowest index.
fn dsatur_pick(g: &SimpleGraph, colours: &[usize]) -> Option<usize> {
    (0..g.n()).filter(|&v| colours[v] == usize::MAX).max_by_key(|&v| {
        let mut seen: Vec<usize> = g.neighbours(v).map(|u| colours[u]).filter(|&c| c != usize::MAX).collect();
        seen.sort_unstable();
        seen.dedup();
        (seen.len(), g.degree(v), std::cmp::Reverse(v))
    })
}

fn dsatur_greedy(g: &SimpleGraph) -> Vec<usize> {
    let mut colours = vec![usize::MAX; g.n()];
    while let Some(v) = dsatur_pick(g, &colours) {
        let c = (0..).find(|&c| g.neighbours(v).all(|u| colours[u] != c)).expect("some colour is free");
        colours[v] = c;
    }
    colours
}

fn exact_chromatic(g: &SimpleGraph) -> (usize, Vec<usize>, u64) {
    let n = g.n();
    if n == 0 {
        return (0, vec![], 0);
    }
    let lower = greedy_clique_size(g);
    let mut best = dsatur_greedy(g);
    let mut best_k = best.iter().max().map_or(0, |&c| c + 1);
    let mut nodes = 0;
    if best_k > lower {
        let mut colours = vec![usize::MAX; n];
        branch(g, &mut colours, 0, lower, &mut best, &mut best_k, &mut nodes);
    }
    (best_k, best, nodes)
}

fn branch(
    g: &SimpleGraph,
    colours: &mut Vec<usize>,
    used: usize,
    lower: usize,
    best: &mut Vec<usize>,
    best_k: &mut usize,
    nodes: &mut u64,
) {
    *nodes += 1;
    let Some(v) = dsatur_pick(g, colours) else {
        if used < *best_k {
            *best_k = used;
            best.clone_from(colours);
        }
        return;
    };
    // colours 0..used are reusable; `used` opens a new one
    for c in 0..=used {
        if c + 1 >= *best_k || *best_k <= lower {
            break;
        }
        if g.neighbours(v).any(|u| colours[u] == c) {
            continue;
        }
        colours[v] = c;
        branch(g, colours, used.max(c + 1), lower, best, best_k, nodes);
        colours[v] = usize::MAX;
    }
}

/// `f(n)`: the fewest arcs in an oriented clique on `n <= 6` vertices, with
/// a witness.
///
/// Underlying graphs are taken from the isomorph-free list in order of edge
/// count; those of diameter above two are skipped since no orientation of
/// them can be a clique.
pub fn min_arc_oriented_clique(n: usize) -> Result<SolveResult, OracleError> {
    cap("order", n, MAX_SIMPLE_ISO_ORDER)?;
    let mut nodes = 0;
    for base in generate::simple_graphs_up_to_iso(n).expect("order checked") {
        let ball_complete = (0..n).all(|v| base.ball_two(v).count_ones(..) == n - 1);
        if !ball_complete {
            continue;
        }
        for g in generate::orientations(&base, u64::MAX).expect("at most 15 edges") {
            nodes += 1;
            if is_oriented_clique(&g) {
                return Ok(SolveResult {
                    value: g.arc_count(),
                    witness: Witness::Clique(g),
                    nodes_explored: nodes,
                });
            }
        }
    }
    unreachable!("every tournament is an oriented clique")
}

/// Searches for an oriented clique on `n <= 9` vertices with at most
/// `budget` arcs: random tournaments are pruned arc by arc while they stay
/// cliques, over a fixed number of seeded restarts.
pub fn oriented_clique_within_budget(
    n: usize,
    budget: usize,
    seed: u64,
) -> Result<Option<SolveResult>, OracleError> {
    cap("order", n, MAX_CLIQUE_WITNESS_ORDER)?;
    const RESTARTS: u64 = 200;
    let mut nodes = 0;
    for attempt in 0..RESTARTS {
        let s = rng::derive(seed, attempt);
        let t = generate::random_tournament(n, s);
        let mut arcs: Vec<(usize, usize)> = t.arcs().collect();
        arcs.shuffle(&mut rng::stream(rng::derive(s, 1)));
        let mut kept = arcs.clone();
        for arc in arcs {
            let trial: Vec<_> = kept.iter().copied().filter(|&a| a != arc).collect();
            let g = OrientedGraph::from_arcs(n, trial.iter().copied()).expect("subgraph");
            nodes += 1;
            if is_oriented_clique(&g) {
                kept = trial;
            }
        }
        if kept.len() <= budget {
            let g = OrientedGraph::from_arcs(n, kept).expect("subgraph");
            return Ok(Some(SolveResult {
                value: g.arc_count(),
                witness: Witness::Clique(g),
                nodes_explored: nodes,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{directed_cycle, path};

    #[test]
    fn single_arc_needs_two_colours() {
        let g = OrientedGraph::from_arcs(2, [(0, 1)]).unwrap();
        let res = exact_oriented_chromatic(&g, 7).unwrap().unwrap();
        assert_eq!(res.value, 2);
        let Witness::Homomorphism { target, map } = &res.witness else { panic!() };
        assert!(validate_homomorphism(&g, target, map));
    }

    #[test]
    fn cap_is_enforced() {
        let g = OrientedGraph::new(3);
        assert!(matches!(exact_oriented_chromatic(&g, 8), Err(OracleError::CapExceeded { .. })));
        assert!(exact_two_dipath(&OrientedGraph::new(21)).is_err());
        assert!(min_arc_oriented_clique(7).is_err());
    }

    #[test]
    fn none_found_is_a_value() {
        let g = directed_cycle(5);
        assert_eq!(exact_oriented_chromatic(&g, 4).unwrap(), None);
    }

    #[test]
    fn simple_graph_values() {
        assert_eq!(exact_oriented_chromatic_simple(&SimpleGraph::complete(3)).unwrap().value, 3);
        assert_eq!(exact_oriented_chromatic_simple(&path(3)).unwrap().value, 3);
        assert_eq!(exact_oriented_chromatic_simple(&SimpleGraph::new(4)).unwrap().value, 1);
    }

    #[test]
    fn dipath_values() {
        let p = OrientedGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(exact_two_dipath(&p).unwrap().value, 3);
        assert_eq!(exact_two_dipath(&OrientedGraph::new(6)).unwrap().value, 1);
        assert_eq!(exact_two_dipath(&OrientedGraph::new(0)).unwrap().value, 0);
    }

    #[test]
    fn identity_and_constant_maps() {
        let g = directed_cycle(4);
        assert!(validate_homomorphism(&g, &g, &[0, 1, 2, 3]));
        assert!(!validate_homomorphism(&g, &g, &[0, 0, 0, 0]));
        assert!(!validate_homomorphism(&g, &g, &[0, 1, 2]));
    }

    #[test]
    fn budget_search_finds_small_cliques() {
        let res = oriented_clique_within_budget(5, 11, 1).unwrap().unwrap();
        let Witness::Clique(g) = &res.witness else { panic!() };
        assert!(is_oriented_clique(g));
        assert!(g.arc_count() <= 11);
        assert_eq!(oriented_clique_within_budget(4, 3, 1).unwrap(), None);
    }
}
