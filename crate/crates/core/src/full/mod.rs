//! `(k, d, N)`-full oriented multipartite graphs.
//!
//! A full graph has `k` independent classes of `N` vertices with every
//! cross-class pair oriented, such that for every class `P_i`, every set `U`
//! of at most `d` vertices outside `P_i` and every sign vector over `U`, some
//! vertex of `P_i` realises that vector toward `U`.
//!
//! Vertices are numbered `class * N + index` with classes `0..k`.

mod lazy;
mod restricted;
mod search;
mod serial;
mod target;

use fixedbitset::FixedBitSet;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{OrientationVector, Sign};
use crate::rng;

pub use lazy::{LazyTarget, LazyVertex};
pub use restricted::{build_restricted, RestrictedTarget};
pub use search::DEFAULT_SEARCH_NODES;
pub use serial::{Certificate, TargetFile, VERIFIER_VERSION};
pub use target::{Target, TargetClass, TargetError};

/// Hard limit on the fullness arity the exhaustive verifier accepts.
pub const MAX_VERIFY_ARITY: usize = 3;
/// Default cap on verifier work, counted in 64-bit word operations.
pub const DEFAULT_VERIFY_BUDGET: u128 = 4_000_000_000;
/// Seeds tried by [`sample_full`] before giving up.
pub const SAMPLE_RETRIES: u64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FullError {
    #[error("verification would cost {cost} word operations, over the budget of {budget}")]
    BudgetExceeded { cost: u128, budget: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not a complete multipartite orientation: {0}")]
    NotMultipartite(String),
    #[error("no certified sample within {0} seeds")]
    NoSample(u64),
}

/// A class, a vertex set outside it, and a sign vector no vertex of the
/// class realises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureWitness {
    pub class: usize,
    pub subset: Vec<usize>,
    pub signs: OrientationVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Full,
    Failure(FailureWitness),
}

/// Orientation of the complete `k`-partite graph with classes of size `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullTarget {
    k: usize,
    d: usize,
    class_size: usize,
    seed: Option<u64>,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
    certified: bool,
}

impl FullTarget {
    /// Builds the orientation where `forward(u, v)` decides `u -> v` for each
    /// cross-class pair `u < v`.
    pub fn from_fn<F>(k: usize, d: usize, class_size: usize, mut forward: F) -> Self
    where
        F: FnMut(usize, usize) -> bool,
    {
        let total = k * class_size;
        let mut out = vec![FixedBitSet::with_capacity(total); total];
        let mut inn = vec![FixedBitSet::with_capacity(total); total];
        for u in 0..total {
            for v in u + 1..total {
                if u / class_size == v / class_size {
                    continue;
                }
                let (a, b) = if forward(u, v) { (u, v) } else { (v, u) };
                out[a].insert(b);
                inn[b].insert(a);
            }
        }
        FullTarget { k, d, class_size, seed: None, out, inn, certified: false }
    }

    /// Builds from an explicit arc list, which must orient every cross-class
    /// pair exactly once and contain no intra-class arc.
    pub fn from_arcs(
        k: usize,
        d: usize,
        class_size: usize,
        arcs: &[(usize, usize)],
    ) -> Result<Self, FullError> {
        let total = k * class_size;
        let mut fwd = FixedBitSet::with_capacity(total * total);
        for &(u, v) in arcs {
            if u >= total || v >= total {
                return Err(FullError::NotMultipartite(format!("arc ({u},{v}) out of range")));
            }
            if u / class_size == v / class_size {
                return Err(FullError::NotMultipartite(format!("arc ({u},{v}) inside a class")));
            }
            if fwd.contains(u * total + v) || fwd.contains(v * total + u) {
                return Err(FullError::NotMultipartite(format!("pair ({u},{v}) oriented twice")));
            }
            fwd.insert(u * total + v);
        }
        let cross = k * (k.saturating_sub(1)) / 2 * class_size * class_size;
        if arcs.len() != cross {
            return Err(FullError::NotMultipartite(format!(
                "{} arcs given, {cross} cross-class pairs",
                arcs.len()
            )));
        }
        Ok(FullTarget::from_fn(k, d, class_size, |u, v| fwd.contains(u * total + v)))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn class_size(&self) -> usize {
        self.class_size
    }

    pub fn vertex_count(&self) -> usize {
        self.k * self.class_size
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn class_of(&self, v: usize) -> usize {
        v / self.class_size
    }

    pub fn class_members(&self, class: usize) -> std::ops::Range<usize> {
        class * self.class_size..(class + 1) * self.class_size
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|s| s.count_ones(..)).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| self.out[u].ones().map(move |v| (u, v)))
    }

    /// Members of `class` whose sign toward `s` is `sign`.
    fn realisers(&self, class: usize, s: usize, sign: Sign) -> FixedBitSet {
        let mut set = match sign {
            Sign::Out => self.inn[s].clone(),
            Sign::In => self.out[s].clone(),
        };
        let mut mask = FixedBitSet::with_capacity(self.vertex_count());
        mask.insert_range(self.class_members(class));
        set.intersect_with(&mask);
        set
    }

    /// Lowest vertex of `class` with the given signs toward the constraint
    /// vertices, if any.
    pub fn find_realiser(&self, class: usize, constraints: &[(usize, Sign)]) -> Option<usize> {
        let mut acc = FixedBitSet::with_capacity(self.vertex_count());
        acc.insert_range(self.class_members(class));
        for &(s, sign) in constraints {
            acc.intersect_with(&self.realisers(class, s, sign));
        }
        acc.ones().next()
    }

    /// Runs [`verify_full`] and marks the target certified on success.
    pub fn certify(mut self, budget: u128) -> Result<(Self, Verification), FullError> {
        let v = verify_full(&self, budget)?;
        self.certified = v == Verification::Full;
        Ok((self, v))
    }

    pub(crate) fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Estimated verifier work in word operations.
pub fn verify_cost(k: usize, d: usize, class_size: usize) -> u128 {
    let outside = ((k.saturating_sub(1)) * class_size) as u128;
    let t = (d as u128).min(outside);
    let words = class_size.div_ceil(64).max(1) as u128;
    (k as u128).saturating_mul(binomial(outside, t)).saturating_mul(1u128 << t.min(100)).saturating_mul(words)
}

/// Exhaustively checks fullness. Only subsets of size exactly
/// `min(d, |outside|)` are examined: if every sign vector over a `d`-set is
/// realised, so is every sign vector over each of its subsets. Subsets are
/// unordered; each is tried with all `2^t` sign vectors, which covers every
/// ordering.
///
/// Classes are checked in parallel; the reported failure is the first in
/// (class, subset, signs) lexicographic order.
pub fn verify_full(h: &FullTarget, budget: u128) -> Result<Verification, FullError> {
    if h.d > MAX_VERIFY_ARITY {
        return Err(FullError::BudgetExceeded { cost: u128::MAX, budget });
    }
    let cost = verify_cost(h.k, h.d, h.class_size);
    if cost > budget {
        return Err(FullError::BudgetExceeded { cost, budget });
    }
    let failures: Vec<Option<FailureWitness>> =
        (0..h.k).into_par_iter().map(|class| first_failure(h, class)).collect();
    Ok(failures.into_iter().flatten().next().map_or(Verification::Full, Verification::Failure))
}

fn first_failure(h: &FullTarget, class: usize) -> Option<FailureWitness> {
    let outside: Vec<usize> = (0..h.vertex_count()).filter(|&v| h.class_of(v) != class).collect();
    let t = h.d.min(outside.len());
    // per outside vertex: realisers for sign Out and sign In, as class-local words
    let words = h.class_size.div_ceil(64).max(1);
    let local = |set: FixedBitSet| -> Vec<u64> {
        let mut w = vec![0u64; words];
        for x in set.ones() {
            let i = x - class * h.class_size;
            w[i / 64] |= 1 << (i % 64);
        }
        w
    };
    let masks: Vec<[Vec<u64>; 2]> = outside
        .iter()
        .map(|&s| [local(h.realisers(class, s, Sign::Out)), local(h.realisers(class, s, Sign::In))])
        .collect();
    let mut full = vec![u64::MAX; words];
    let rem = h.class_size % 64;
    if rem != 0 {
        full[words - 1] = (1u64 << rem) - 1;
    }
    if h.class_size == 0 {
        full[0] = 0;
    }
    let mut chosen = Vec::with_capacity(t);
    search_subsets(&masks, t, 0, &mut chosen, &full).map(|(subset, signs)| FailureWitness {
        class,
        subset: subset.into_iter().map(|i| outside[i]).collect(),
        signs: OrientationVector(signs),
    })
}

/// Depth-first over combinations of outside vertices; at each leaf tries
/// every sign vector in binary order (bit `j` set means `In` for position `j`,
/// most significant first).
fn search_subsets(
    masks: &[[Vec<u64>; 2]],
    t: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    full: &[u64],
) -> Option<(Vec<usize>, Vec<Sign>)> {
    if chosen.len() == t {
        for pattern in 0u32..(1 << t) {
            let signs: Vec<Sign> =
                (0..t).map(|j| if pattern >> (t - 1 - j) & 1 == 1 { Sign::In } else { Sign::Out }).collect();
            let mut acc = full.to_vec();
            for (j, &i) in chosen.iter().enumerate() {
                let m = &masks[i][(signs[j] == Sign::In) as usize];
                for (a, b) in acc.iter_mut().zip(m) {
                    *a &= b;
                }
            }
            if acc.iter().all(|&w| w == 0) {
                return Some((chosen.clone(), signs));
            }
        }
        return None;
    }
    for i in start..masks.len() {
        if masks.len() - i < t - chosen.len() {
            break;
        }
        chosen.push(i);
        let hit = search_subsets(masks, t, i + 1, chosen, full);
        chosen.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// `⌈8^d ln k⌉`, the class size for which a random orientation is full with
/// positive probability.
pub fn sample_class_size(k: usize, d: usize) -> usize {
    (8f64.powi(d as i32) * (k as f64).ln()).ceil() as usize
}

/// Union bound `k (kN)^d 2^d exp(-N / 2^d)` on the probability that a
/// uniformly random orientation fails to be `(k, d, N)`-full. Evaluated in
/// log space.
pub fn failure_probability_bound(k: usize, d: usize, class_size: usize) -> f64 {
    let (k, d, n) = (k as f64, d as f64, class_size as f64);
    let ln_p = k.ln() + d * (k * n).ln() + d * 2f64.ln() - n / 2f64.powf(d);
    ln_p.exp()
}

/// Uniformly random orientation with a seeded fair coin per cross-class pair.
pub fn random_full_candidate(k: usize, d: usize, class_size: usize, seed: u64) -> FullTarget {
    let mut r = rng::stream(seed);
    FullTarget::from_fn(k, d, class_size, |_, _| r.random_bool(0.5)).with_seed(seed)
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub target: FullTarget,
    /// Seeds tried, including the successful one.
    pub attempts: u64,
}

/// Las Vegas sampler: random orientations with `N = ⌈8^d ln k⌉`, verified,
/// retried with `seed + 1, seed + 2, …` up to [`SAMPLE_RETRIES`] seeds.
pub fn sample_full(k: usize, d: usize, seed: u64, budget: u128) -> Result<Sample, FullError> {
    if k < 5 || d < 2 {
        return Err(FullError::InvalidParameters(format!(
            "sampling needs k >= 5 and d >= 2, got k = {k}, d = {d}"
        )));
    }
    sample_full_with_size(k, d, sample_class_size(k, d), seed, budget)
}

/// [`sample_full`] with an explicit class size.
pub fn sample_full_with_size(
    k: usize,
    d: usize,
    class_size: usize,
    seed: u64,
    budget: u128,
) -> Result<Sample, FullError> {
    let cost = verify_cost(k, d, class_size);
    if d > MAX_VERIFY_ARITY || cost > budget {
        return Err(FullError::BudgetExceeded { cost, budget });
    }
    for attempt in 0..SAMPLE_RETRIES {
        let s = seed.wrapping_add(attempt);
        let (target, verdict) = random_full_candidate(k, d, class_size, s).certify(budget)?;
        if verdict == Verification::Full {
            return Ok(Sample { target, attempts: attempt + 1 });
        }
    }
    Err(FullError::NoSample(SAMPLE_RETRIES))
}

/// Smallest `N <= n_cap` for which some orientation of the complete
/// `k`-partite graph with classes of size `N` is `(k, d, N)`-full. Returns
/// that `N` with a certified witness.
pub fn minimal_full_n(k: usize, d: usize, n_cap: usize) -> Result<Option<(usize, FullTarget)>, FullError> {
    if k < 2 {
        return Err(FullError::InvalidParameters(format!("need k >= 2, got {k}")));
    }
    for n in 1..=n_cap {
        if let Some(target) = full_orientation_of_size(k, d, n, DEFAULT_SEARCH_NODES)? {
            return Ok(Some((n, target)));
        }
    }
    Ok(None)
}

/// Exhaustive search (with symmetry reduction and pruning) for a full
/// orientation of the complete `k`-partite graph with classes of size `n`.
/// `node_budget` caps the number of search nodes.
pub fn full_orientation_of_size(
    k: usize,
    d: usize,
    n: usize,
    node_budget: u64,
) -> Result<Option<FullTarget>, FullError> {
    search::search_full(k, d, n, node_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn two_class_example_is_not_full() {
        // two class-1 vertices on which class 0 only shows opposite signs
        let h = fixtures::two_class_example();
        let Verification::Failure(w) = verify_full(&h, DEFAULT_VERIFY_BUDGET).unwrap() else {
            panic!("expected a failure");
        };
        assert_eq!((w.class, w.subset), (0, vec![4, 6]));
        assert_eq!(w.signs.0, vec![Sign::Out, Sign::Out]);
    }

    #[test]
    fn one_directional_bipartite_is_not_full() {
        let h = FullTarget::from_fn(2, 1, 3, |_, _| true);
        let Verification::Failure(w) = verify_full(&h, DEFAULT_VERIFY_BUDGET).unwrap() else {
            panic!("expected a failure");
        };
        assert_eq!(w.class, 0);
        assert_eq!(w.subset, vec![3]);
        // every class-0 vertex points at 3, so nobody has 3 pointing in
        assert_eq!(w.signs.0, vec![Sign::In]);
    }

    #[test]
    fn sample_sizes() {
        // 64 ln 5 = 103.004...
        assert_eq!(sample_class_size(5, 2), 104);
        assert_eq!(sample_class_size(6, 2), 115);
    }

    #[test]
    fn failure_bound_values() {
        let p = failure_probability_bound(5, 2, 103);
        assert!((p - 3.480e-5).abs() < 0.001e-5, "{p}");
        assert!((failure_probability_bound(6, 2, 115) - 3.732e-6).abs() < 0.001e-6);
        assert!(failure_probability_bound(5, 2, 1) > 1.0);
        let mut last = f64::INFINITY;
        for n in (100..2000).step_by(50) {
            let p = failure_probability_bound(5, 2, n);
            assert!(p < last);
            last = p;
        }
    }

    #[test]
    fn sampling_preconditions() {
        assert!(matches!(sample_full(4, 2, 0, DEFAULT_VERIFY_BUDGET), Err(FullError::InvalidParameters(_))));
        assert!(matches!(sample_full(5, 1, 0, DEFAULT_VERIFY_BUDGET), Err(FullError::InvalidParameters(_))));
        assert!(matches!(sample_full(5, 4, 0, DEFAULT_VERIFY_BUDGET), Err(FullError::BudgetExceeded { .. })));
    }

    #[test]
    fn minimal_sizes_for_two_classes() {
        let (n, h) = minimal_full_n(2, 1, 4).unwrap().unwrap();
        assert_eq!(n, 2);
        assert!(h.is_certified());
        let (n, h) = minimal_full_n(2, 2, 6).unwrap().unwrap();
        assert_eq!(n, 6);
        assert_eq!(verify_full(&h, DEFAULT_VERIFY_BUDGET).unwrap(), Verification::Full);
        assert!(matches!(full_orientation_of_size(2, 2, 6, 10), Err(FullError::BudgetExceeded { .. })));
    }

    #[test]
    fn from_arcs_validates() {
        assert!(FullTarget::from_arcs(2, 1, 1, &[(0, 1)]).is_ok());
        assert!(FullTarget::from_arcs(2, 1, 1, &[]).is_err());
        assert!(FullTarget::from_arcs(2, 1, 2, &[(0, 1)]).is_err());
    }

    #[test]
    fn realiser_lookup() {
        let h = full_orientation_of_size(2, 2, 6, DEFAULT_SEARCH_NODES).unwrap().unwrap();
        for class in 0..2 {
            let others: Vec<usize> = (0..12).filter(|&v| h.class_of(v) != class).collect();
            for &a in &others {
                for &b in &others {
                    if a == b {
                        continue;
                    }
                    for sa in [Sign::Out, Sign::In] {
                        for sb in [Sign::Out, Sign::In] {
                            let x = h.find_realiser(class, &[(a, sa), (b, sb)]).unwrap();
                            assert_eq!(h.class_of(x), class);
                            assert_eq!(h.has_arc(x, a), sa == Sign::Out);
                            assert_eq!(h.has_arc(x, b), sb == Sign::Out);
                        }
                    }
                }
            }
        }
    }
}
