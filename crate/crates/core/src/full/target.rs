use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::graph::Sign;

/// Where a target vertex lives: the reserved pool `P_0`, or free class `i`
/// (numbered from 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetClass {
    Reserved,
    Free(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetError {
    #[error("class {class} is not a free class (there are {free})")]
    InvalidClass { class: usize, free: usize },
    #[error("{given} constraints exceed the fullness arity {arity}")]
    ArityExceeded { given: usize, arity: usize },
    #[error("a constraint vertex lies in the requested class {class}")]
    ClassCollision { class: usize },
    #[error("the same target vertex is constrained with both signs")]
    ConflictingConstraints,
    #[error("no vertex of class {class} realises the requested signs")]
    NotRealisable { class: usize },
    #[error("reserved pool holds {capacity} vertices, {requested} requested")]
    CapacityExceeded { requested: usize, capacity: usize },
    #[error("arc between reserved vertices would break orientation")]
    ReservedArcConflict,
}

/// A target for oriented homomorphisms built from a full graph with the arcs
/// inside the reserved pool removed.
///
/// Constraints are `(s, sign)` pairs where `sign` is the direction from the
/// vertex being chosen toward `s`.
pub trait Target {
    type Vertex: Copy + Eq + Ord + Hash + Debug;

    fn free_classes(&self) -> usize;

    /// Number of reserved vertices, `None` when unbounded.
    fn reserved_capacity(&self) -> Option<usize>;

    /// Largest constraint list [`Target::realise`] accepts, `None` when
    /// unbounded.
    fn arity(&self) -> Option<usize>;

    fn class_of(&self, v: Self::Vertex) -> TargetClass;

    /// The `i`-th vertex of the reserved pool.
    fn reserved_vertex(&mut self, i: usize) -> Result<Self::Vertex, TargetError>;

    /// Adds `a -> b` between two reserved vertices.
    fn install_reserved_arc(&mut self, a: Self::Vertex, b: Self::Vertex) -> Result<(), TargetError>;

    /// Whether any arc has been installed inside the reserved pool.
    fn has_reserved_arcs(&self) -> bool;

    /// A vertex of free class `class` with the given sign toward each
    /// constraint vertex.
    fn realise(
        &mut self,
        class: usize,
        constraints: &[(Self::Vertex, Sign)],
    ) -> Result<Self::Vertex, TargetError>;

    /// Whether the arc `a -> b` is present (already decided, for lazy
    /// targets).
    fn has_arc(&self, a: Self::Vertex, b: Self::Vertex) -> bool;
}

/// Sorts and deduplicates constraints, rejecting a vertex constrained both
/// ways.
pub(crate) fn normalise_constraints<V: Copy + Ord>(
    constraints: &[(V, Sign)],
) -> Result<Vec<(V, Sign)>, TargetError> {
    let mut c = constraints.to_vec();
    c.sort();
    c.dedup();
    if c.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(TargetError::ConflictingConstraints);
    }
    Ok(c)
}
