use std::collections::BTreeSet;

use thiserror::Error;

use crate::full::{Target, TargetClass, TargetError};
use crate::graph::{OrientedGraph, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error(transparent)]
    Target(#[from] TargetError),
    #[error("the reserved pool already holds arcs")]
    ReservedPoolInUse,
    #[error("every free class meets the constraint images of vertex {vertex}")]
    NoFreeClass { vertex: usize },
}

/// A partial map from source vertices to target vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism<V> {
    map: Vec<Option<V>>,
}

impl<V: Copy + Ord> Homomorphism<V> {
    pub fn new(n: usize) -> Self {
        Homomorphism { map: vec![None; n] }
    }

    pub fn get(&self, v: usize) -> Option<V> {
        self.map[v]
    }

    pub fn set(&mut self, v: usize, image: V) {
        self.map[v] = Some(image);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn images(&self) -> &[Option<V>] {
        &self.map
    }

    /// Number of distinct target vertices used.
    pub fn distinct_images(&self) -> usize {
        self.map.iter().flatten().collect::<BTreeSet<_>>().len()
    }

    /// Mapped neighbours of `v` in `g` as realisation constraints.
    pub fn constraints(&self, g: &OrientedGraph, v: usize) -> Vec<(V, Sign)> {
        g.neighbours(v)
            .into_iter()
            .filter_map(|u| self.map[u].map(|x| (x, g.sign(v, u).expect("adjacent"))))
            .collect()
    }
}

/// Every vertex with `alive[v]` is mapped, and every arc of `g` lands on an
/// arc of the target.
pub fn validate<T: Target>(
    g: &OrientedGraph,
    alive: &[bool],
    h: &Homomorphism<T::Vertex>,
    target: &T,
) -> bool {
    if h.len() != g.n() || (0..g.n()).any(|v| alive[v] && h.get(v).is_none()) {
        return false;
    }
    g.arcs().all(|(u, v)| match (h.get(u), h.get(v)) {
        (Some(a), Some(b)) => target.has_arc(a, b),
        _ => false,
    })
}

/// Whether no two vertices share an image inside the reserved pool.
pub fn reserved_injective<T: Target>(h: &Homomorphism<T::Vertex>, target: &T) -> bool {
    let reserved: Vec<T::Vertex> = h
        .images()
        .iter()
        .flatten()
        .copied()
        .filter(|&x| target.class_of(x) == TargetClass::Reserved)
        .collect();
    reserved.iter().collect::<BTreeSet<_>>().len() == reserved.len()
}

/// Maps `order[i]` to the `i`-th reserved vertex and installs the arcs of
/// `g` among those vertices inside the reserved pool.
pub fn embed_prefix<T: Target>(
    g: &OrientedGraph,
    order: &[usize],
    h: &mut Homomorphism<T::Vertex>,
    target: &mut T,
) -> Result<(), ExtendError> {
    if target.has_reserved_arcs() {
        return Err(ExtendError::ReservedPoolInUse);
    }
    if let Some(cap) = target.reserved_capacity() {
        if order.len() > cap {
            return Err(TargetError::CapacityExceeded { requested: order.len(), capacity: cap }.into());
        }
    }
    let mut chosen = vec![false; g.n()];
    for (i, &v) in order.iter().enumerate() {
        h.set(v, target.reserved_vertex(i)?);
        chosen[v] = true;
    }
    for (u, v) in g.arcs() {
        if chosen[u] && chosen[v] {
            let (a, b) = (h.get(u).expect("mapped"), h.get(v).expect("mapped"));
            target.install_reserved_arc(a, b)?;
        }
    }
    Ok(())
}

/// Injective map of all of `g` into the reserved pool.
pub fn embed_small<T: Target>(
    g: &OrientedGraph,
    target: &mut T,
) -> Result<Homomorphism<T::Vertex>, ExtendError> {
    let mut h = Homomorphism::new(g.n());
    let order: Vec<usize> = (0..g.n()).collect();
    embed_prefix(g, &order, &mut h, target)?;
    Ok(h)
}

/// Maps `v` into free class `class`, realising its orientation toward the
/// images of its mapped neighbours.
pub fn extend_vertex<T: Target>(
    g: &OrientedGraph,
    h: &mut Homomorphism<T::Vertex>,
    v: usize,
    class: usize,
    target: &mut T,
) -> Result<T::Vertex, ExtendError> {
    let constraints = h.constraints(g, v);
    let x = target.realise(class, &constraints)?;
    h.set(v, x);
    Ok(x)
}

/// Lowest free class containing none of `images`.
pub fn class_avoiding<T: Target>(
    target: &T,
    images: &[T::Vertex],
    vertex: usize,
) -> Result<usize, ExtendError> {
    let used: BTreeSet<TargetClass> = images.iter().map(|&x| target.class_of(x)).collect();
    (0..target.free_classes())
        .find(|&i| !used.contains(&TargetClass::Free(i)))
        .ok_or(ExtendError::NoFreeClass { vertex })
}
