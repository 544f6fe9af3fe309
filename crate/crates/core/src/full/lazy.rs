//! An on-demand, memoised stand-in for a full target of unbounded class
//! size.
//!
//! Vertices are minted only when a query needs them. The orientation of each
//! cross-class pair is decided at most once: either fixed by a query
//! constraint, or, when first asked for, by a seeded fair coin. Any finite
//! set of constraints with no vertex in the requested class can be met by a
//! fresh vertex, so queries never fail for lack of realisers.

use std::collections::{BTreeSet, HashMap};

use super::target::normalise_constraints;
use super::{Target, TargetClass, TargetError};
use crate::graph::{OrientedGraph, Sign};
use crate::params::SurfaceParams;
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LazyVertex {
    pub class: TargetClass,
    pub index: usize,
}

impl LazyVertex {
    fn key(self) -> u64 {
        let class = match self.class {
            TargetClass::Reserved => 0,
            TargetClass::Free(i) => i as u64 + 1,
        };
        class << 32 | self.index as u64
    }
}

#[derive(Debug, Clone)]
pub struct LazyTarget {
    free: usize,
    seed: u64,
    minted: Vec<usize>,
    reserved_minted: usize,
    /// `(lo, hi) -> true` means `lo -> hi`.
    memo: HashMap<(LazyVertex, LazyVertex), bool>,
    reserved_arcs: BTreeSet<(LazyVertex, LazyVertex)>,
}

impl LazyTarget {
    pub fn new(free_classes: usize, seed: u64) -> Self {
        LazyTarget {
            free: free_classes,
            seed,
            minted: vec![0; free_classes],
            reserved_minted: 0,
            memo: HashMap::new(),
            reserved_arcs: BTreeSet::new(),
        }
    }

    /// Target with `138g − 162` free classes.
    pub fn for_params(params: &SurfaceParams, seed: u64) -> Self {
        LazyTarget::new(params.free_classes, seed)
    }

    /// Vertices minted so far, reserved pool included.
    pub fn minted_count(&self) -> usize {
        self.minted.iter().sum::<usize>() + self.reserved_minted
    }

    pub fn decided_pairs(&self) -> usize {
        self.memo.len()
    }

    fn ordered(a: LazyVertex, b: LazyVertex) -> ((LazyVertex, LazyVertex), bool) {
        if a <= b {
            ((a, b), false)
        } else {
            ((b, a), true)
        }
    }

    fn cross_class(a: LazyVertex, b: LazyVertex) -> bool {
        a.class != b.class
    }

    /// Decided orientation of a cross-class pair: `Some(true)` for `a -> b`.
    pub fn decided(&self, a: LazyVertex, b: LazyVertex) -> Option<bool> {
        let (key, flipped) = Self::ordered(a, b);
        self.memo.get(&key).map(|&fwd| fwd ^ flipped)
    }

    fn fix(&mut self, a: LazyVertex, b: LazyVertex, a_to_b: bool) {
        let (key, flipped) = Self::ordered(a, b);
        let previous = self.memo.insert(key, a_to_b ^ flipped);
        debug_assert!(previous.is_none() || previous == Some(a_to_b ^ flipped));
    }

    /// Orientation of the pair, deciding it by coin if nobody has yet.
    /// `None` for pairs that carry no arc of the underlying full graph
    /// (same class, or both reserved).
    pub fn arc(&mut self, a: LazyVertex, b: LazyVertex) -> Option<bool> {
        if a == b {
            return None;
        }
        if a.class == TargetClass::Reserved && b.class == TargetClass::Reserved {
            if self.reserved_arcs.contains(&(a, b)) {
                return Some(true);
            }
            return self.reserved_arcs.contains(&(b, a)).then_some(false);
        }
        if !Self::cross_class(a, b) {
            return None;
        }
        if let Some(d) = self.decided(a, b) {
            return Some(d);
        }
        let fwd = rng::pair_coin(self.seed, a.key(), b.key());
        self.fix(a, b, fwd);
        Some(fwd)
    }

    fn compatible(&self, x: LazyVertex, constraints: &[(LazyVertex, Sign)]) -> bool {
        constraints.iter().all(|&(s, sign)| match self.decided(x, s) {
            None => true,
            Some(x_to_s) => x_to_s == (sign == Sign::Out),
        })
    }

    /// Every minted vertex and the arcs decided among them, as an oriented
    /// graph (vertex `i` of the graph is entry `i` of the returned list).
    pub fn realised_graph(&self) -> (Vec<LazyVertex>, OrientedGraph) {
        let mut vertices: Vec<LazyVertex> = (0..self.reserved_minted)
            .map(|index| LazyVertex { class: TargetClass::Reserved, index })
            .collect();
        for (i, &count) in self.minted.iter().enumerate() {
            vertices.extend((0..count).map(|index| LazyVertex { class: TargetClass::Free(i), index }));
        }
        let id: HashMap<LazyVertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut arcs: Vec<(usize, usize)> = self
            .memo
            .iter()
            .map(|(&(lo, hi), &fwd)| if fwd { (id[&lo], id[&hi]) } else { (id[&hi], id[&lo]) })
            .chain(self.reserved_arcs.iter().map(|(a, b)| (id[a], id[b])))
            .collect();
        arcs.sort_unstable();
        let g = OrientedGraph::from_arcs(vertices.len(), arcs).expect("lazy target stays oriented");
        (vertices, g)
    }
}

impl Target for LazyTarget {
    type Vertex = LazyVertex;

    fn free_classes(&self) -> usize {
        self.free
    }

    fn reserved_capacity(&self) -> Option<usize> {
        None
    }

    fn arity(&self) -> Option<usize> {
        None
    }

    fn class_of(&self, v: LazyVertex) -> TargetClass {
        v.class
    }

    fn reserved_vertex(&mut self, i: usize) -> Result<LazyVertex, TargetError> {
        self.reserved_minted = self.reserved_minted.max(i + 1);
        Ok(LazyVertex { class: TargetClass::Reserved, index: i })
    }

    fn install_reserved_arc(&mut self, a: LazyVertex, b: LazyVertex) -> Result<(), TargetError> {
        let reserved = |v: LazyVertex| v.class == TargetClass::Reserved && v.index < self.reserved_minted;
        if !reserved(a) || !reserved(b) || a == b || self.reserved_arcs.contains(&(b, a)) {
            return Err(TargetError::ReservedArcConflict);
        }
        self.reserved_arcs.insert((a, b));
        Ok(())
    }

    fn has_reserved_arcs(&self) -> bool {
        !self.reserved_arcs.is_empty()
    }

    /// Reuses the lowest-index minted vertex of the class whose decided
    /// orientations agree with every constraint (fixing the undecided ones),
    /// and otherwise mints a new vertex.
    fn realise(
        &mut self,
        class: usize,
        constraints: &[(LazyVertex, Sign)],
    ) -> Result<LazyVertex, TargetError> {
        if class >= self.free {
            return Err(TargetError::InvalidClass { class, free: self.free });
        }
        let c = normalise_constraints(constraints)?;
        if c.iter().any(|&(s, _)| s.class == TargetClass::Free(class)) {
            return Err(TargetError::ClassCollision { class });
        }
        let reuse = (0..self.minted[class])
            .map(|index| LazyVertex { class: TargetClass::Free(class), index })
            .find(|&x| self.compatible(x, &c));
        let x = reuse.unwrap_or_else(|| {
            let index = self.minted[class];
            self.minted[class] += 1;
            LazyVertex { class: TargetClass::Free(class), index }
        });
        for &(s, sign) in &c {
            if self.decided(x, s).is_none() {
                self.fix(x, s, sign == Sign::Out);
            }
        }
        Ok(x)
    }

    fn has_arc(&self, a: LazyVertex, b: LazyVertex) -> bool {
        if a.class == TargetClass::Reserved && b.class == TargetClass::Reserved {
            return self.reserved_arcs.contains(&(a, b));
        }
        self.decided(a, b) == Some(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(class: usize, index: usize) -> LazyVertex {
        LazyVertex { class: TargetClass::Free(class), index }
    }

    #[test]
    fn empty_query_mints_then_reuses() {
        let mut t = LazyTarget::new(3, 1);
        assert_eq!(t.realise(1, &[]).unwrap(), free(1, 0));
        assert_eq!(t.realise(1, &[]).unwrap(), free(1, 0));
        assert_eq!(t.minted_count(), 1);
    }

    #[test]
    fn constraints_are_memoised() {
        let mut t = LazyTarget::new(3, 1);
        let s = t.realise(0, &[]).unwrap();
        let x = t.realise(2, &[(s, Sign::Out)]).unwrap();
        for _ in 0..3 {
            assert_eq!(t.arc(x, s), Some(true));
            assert_eq!(t.arc(s, x), Some(false));
        }
        // opposite request cannot reuse x
        let y = t.realise(2, &[(s, Sign::In)]).unwrap();
        assert_ne!(x, y);
        assert!(t.has_arc(s, y));
    }

    #[test]
    fn errors() {
        let mut t = LazyTarget::new(2, 1);
        assert!(matches!(t.realise(2, &[]), Err(TargetError::InvalidClass { .. })));
        let s = t.realise(0, &[]).unwrap();
        assert!(matches!(t.realise(0, &[(s, Sign::Out)]), Err(TargetError::ClassCollision { .. })));
        let u = t.realise(1, &[]).unwrap();
        assert!(matches!(
            t.realise(0, &[(u, Sign::Out), (u, Sign::In)]),
            Err(TargetError::ConflictingConstraints)
        ));
    }

    #[test]
    fn no_intra_class_arcs() {
        let mut t = LazyTarget::new(2, 1);
        assert_eq!(t.arc(free(0, 0), free(0, 1)), None);
        let r0 = t.reserved_vertex(0).unwrap();
        let r1 = t.reserved_vertex(1).unwrap();
        assert_eq!(t.arc(r0, r1), None);
        t.install_reserved_arc(r0, r1).unwrap();
        assert_eq!(t.arc(r0, r1), Some(true));
        assert_eq!(t.arc(r1, r0), Some(false));
        assert!(t.install_reserved_arc(r1, r0).is_err());
    }
}
