//! Small hand-checked instances used by tests, the self-test and the CLI.

use crate::full::FullTarget;
use crate::graph::OrientedGraph;

/// A directed 6-cycle `0 -> 1 -> ... -> 5 -> 0` with a sink `6` receiving an
/// arc from every cycle vertex.
pub fn sink_wheel() -> OrientedGraph {
    let mut arcs: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    arcs.extend((0..6).map(|i| (i, 6)));
    OrientedGraph::from_arcs(7, arcs).expect("valid fixture")
}

/// A directed triangle `0 -> 1 -> 2 -> 0` dominating a sink `3`.
pub fn sink_triangle() -> OrientedGraph {
    OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]).expect("valid fixture")
}

/// Homomorphism from [`sink_wheel`] to [`sink_triangle`].
pub fn sink_wheel_map() -> Vec<usize> {
    vec![2, 0, 1, 2, 0, 1, 3]
}

/// An orientation of `K_{4,4}` drawn as a `(2, 2, 4)`-full graph. Class 0 is
/// `0..4`, class 1 is `4..8`. It is not full: no vertex of class 0 has arcs
/// to both 4 and 6.
pub fn two_class_example() -> FullTarget {
    let arcs = [
        (0, 4),
        (0, 5),
        (6, 0),
        (7, 0),
        (4, 1),
        (1, 5),
        (1, 6),
        (7, 1),
        (4, 2),
        (5, 2),
        (2, 6),
        (2, 7),
        (3, 4),
        (5, 3),
        (6, 3),
        (3, 7),
    ];
    FullTarget::from_arcs(2, 2, 4, &arcs).expect("valid fixture")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::validate_homomorphism;

    #[test]
    fn sink_wheel_map_is_a_homomorphism() {
        assert!(validate_homomorphism(&sink_wheel(), &sink_triangle(), &sink_wheel_map()));
    }
}
