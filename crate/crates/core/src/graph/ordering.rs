use super::OrientedGraph;

/// A vertex order together with the largest back-degree along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    pub order: Vec<usize>,
    /// `position[v]` is the index of `v` in `order`.
    pub position: Vec<usize>,
    pub degeneracy: usize,
}

impl VertexOrdering {
    /// Wraps an arbitrary permutation, measuring its back-degrees in `g`.
    ///
    /// Panics if `order` is not a permutation of `0..g.n()`.
    pub fn from_order(g: &OrientedGraph, order: Vec<usize>) -> Self {
        let n = g.n();
        assert_eq!(order.len(), n, "ordering length differs from vertex count");
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            assert!(position[v] == usize::MAX, "vertex {v} repeated in ordering");
            position[v] = i;
        }
        let mut ord = VertexOrdering { order, position, degeneracy: 0 };
        ord.degeneracy = (0..n).map(|v| ord.back_degree(g, v)).max().unwrap_or(0);
        ord
    }

    /// Neighbours of `v` placed before it.
    pub fn earlier_neighbours(&self, g: &OrientedGraph, v: usize) -> Vec<usize> {
        g.neighbours(v).into_iter().filter(|&u| self.position[u] < self.position[v]).collect()
    }

    pub fn back_degree(&self, g: &OrientedGraph, v: usize) -> usize {
        g.neighbours(v).into_iter().filter(|&u| self.position[u] < self.position[v]).count()
    }
}

/// Peels a minimum-degree vertex (lowest index on ties) until nothing is left,
/// then reverses the removal sequence so that `order[i]` has minimum degree in
/// the subgraph induced by `order[..=i]`.
pub fn degeneracy_ordering(g: &OrientedGraph) -> VertexOrdering {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut removed = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (degree[v], v)).expect("a live vertex remains");
        alive[v] = false;
        for u in g.neighbours(v) {
            if alive[u] {
                degree[u] -= 1;
            }
        }
        removed.push(v);
    }
    removed.reverse();
    VertexOrdering::from_order(g, removed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_is_zero_degenerate() {
        let ord = degeneracy_ordering(&OrientedGraph::new(5));
        assert_eq!(ord.degeneracy, 0);
        assert_eq!(ord.order.len(), 5);
    }

    #[test]
    fn star_is_one_degenerate() {
        let g = OrientedGraph::from_arcs(5, [(0, 1), (2, 0), (0, 3), (4, 0)]).unwrap();
        let ord = degeneracy_ordering(&g);
        assert_eq!(ord.degeneracy, 1);
    }

    #[test]
    fn each_vertex_has_minimum_degree_in_its_prefix() {
        let g = OrientedGraph::from_arcs(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (0, 4)])
            .unwrap();
        let ord = degeneracy_ordering(&g);
        for i in 0..g.n() {
            let prefix = &ord.order[..=i];
            let deg_in = |v: usize| prefix.iter().filter(|&&u| g.adjacent(u, v)).count();
            let v = ord.order[i];
            assert!(prefix.iter().all(|&u| deg_in(v) <= deg_in(u)));
        }
    }
}
