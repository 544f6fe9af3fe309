use std::collections::BTreeSet;

use super::target::normalise_constraints;
use super::{FullTarget, Target, TargetClass, TargetError};
use crate::graph::Sign;

/// A full target whose classes `free..k` are merged into a reserved pool
/// `P_0` with every arc inside it deleted. Arcs may later be installed
/// inside `P_0` explicitly.
#[derive(Debug, Clone)]
pub struct RestrictedTarget {
    base: FullTarget,
    free: usize,
    extra: BTreeSet<(usize, usize)>,
}

impl RestrictedTarget {
    /// Panics unless `1 <= free_classes < k`.
    pub fn new(base: FullTarget, free_classes: usize) -> Self {
        assert!(
            free_classes >= 1 && free_classes < base.k(),
            "free classes must lie in 1..k, got {free_classes} with k = {}",
            base.k()
        );
        RestrictedTarget { base, free: free_classes, extra: BTreeSet::new() }
    }

    pub fn base(&self) -> &FullTarget {
        &self.base
    }

    pub fn reserved_size(&self) -> usize {
        (self.base.k() - self.free) * self.base.class_size()
    }

    fn first_reserved(&self) -> usize {
        self.free * self.base.class_size()
    }

    fn is_reserved(&self, v: usize) -> bool {
        v >= self.first_reserved()
    }

    pub fn extra_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.extra.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.base.arcs().filter(|&(u, v)| !(self.is_reserved(u) && self.is_reserved(v))).count()
            + self.extra.len()
    }
}

/// Deletes all arcs among classes `free_classes..k`, merging them into the
/// reserved pool.
pub fn build_restricted(base: FullTarget, free_classes: usize) -> RestrictedTarget {
    RestrictedTarget::new(base, free_classes)
}

impl Target for RestrictedTarget {
    type Vertex = usize;

    fn free_classes(&self) -> usize {
        self.free
    }

    fn reserved_capacity(&self) -> Option<usize> {
        Some(self.reserved_size())
    }

    fn arity(&self) -> Option<usize> {
        Some(self.base.d())
    }

    fn class_of(&self, v: usize) -> TargetClass {
        if self.is_reserved(v) {
            TargetClass::Reserved
        } else {
            TargetClass::Free(self.base.class_of(v))
        }
    }

    fn reserved_vertex(&mut self, i: usize) -> Result<usize, TargetError> {
        if i >= self.reserved_size() {
            return Err(TargetError::CapacityExceeded { requested: i + 1, capacity: self.reserved_size() });
        }
        Ok(self.first_reserved() + i)
    }

    fn install_reserved_arc(&mut self, a: usize, b: usize) -> Result<(), TargetError> {
        if !self.is_reserved(a) || !self.is_reserved(b) || a == b || self.extra.contains(&(b, a)) {
            return Err(TargetError::ReservedArcConflict);
        }
        self.extra.insert((a, b));
        Ok(())
    }

    fn has_reserved_arcs(&self) -> bool {
        !self.extra.is_empty()
    }

    fn realise(&mut self, class: usize, constraints: &[(usize, Sign)]) -> Result<usize, TargetError> {
        if class >= self.free {
            return Err(TargetError::InvalidClass { class, free: self.free });
        }
        let c = normalise_constraints(constraints)?;
        if c.len() > self.base.d() {
            return Err(TargetError::ArityExceeded { given: c.len(), arity: self.base.d() });
        }
        if c.iter().any(|&(s, _)| self.base.class_of(s) == class) {
            return Err(TargetError::ClassCollision { class });
        }
        self.base.find_realiser(class, &c).ok_or(TargetError::NotRealisable { class })
    }

    fn has_arc(&self, a: usize, b: usize) -> bool {
        if self.is_reserved(a) && self.is_reserved(b) {
            self.extra.contains(&(a, b))
        } else {
            self.base.has_arc(a, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn two_class_example_with_one_free_class() {
        let r = build_restricted(fixtures::two_class_example(), 1);
        assert_eq!(r.reserved_size(), 4);
        assert_eq!(r.arc_count(), 16);
        assert_eq!(r.class_of(5), TargetClass::Reserved);
        assert_eq!(r.class_of(2), TargetClass::Free(0));
        assert!((4..8).all(|a| (4..8).all(|b| !r.has_arc(a, b))));
    }

    #[test]
    fn arc_accounting() {
        let base = crate::full::random_full_candidate(5, 2, 3, 7);
        let total = base.arc_count();
        let r = build_restricted(base, 2);
        // classes 2, 3, 4 lose their 3 * 9 mutual arcs
        assert_eq!(r.arc_count(), total - 3 * 9);
    }

    #[test]
    fn realise_checks() {
        let mut r = build_restricted(fixtures::two_class_example(), 1);
        assert!(matches!(r.realise(1, &[]), Err(TargetError::InvalidClass { .. })));
        assert!(matches!(
            r.realise(0, &[(4, Sign::Out), (5, Sign::In), (6, Sign::In)]),
            Err(TargetError::ArityExceeded { given: 3, arity: 2 })
        ));
        assert!(matches!(r.realise(0, &[(1, Sign::Out)]), Err(TargetError::ClassCollision { .. })));
        let x = r.realise(0, &[(4, Sign::In), (7, Sign::Out)]).unwrap();
        assert!(r.has_arc(4, x) && r.has_arc(x, 7));
    }

    #[test]
    fn reserved_arcs() {
        let mut r = build_restricted(fixtures::two_class_example(), 1);
        r.install_reserved_arc(4, 5).unwrap();
        assert!(r.has_arc(4, 5));
        assert_eq!(r.install_reserved_arc(5, 4), Err(TargetError::ReservedArcConflict));
        assert_eq!(r.install_reserved_arc(0, 4), Err(TargetError::ReservedArcConflict));
        assert!(r.reserved_vertex(4).is_err());
    }
}
