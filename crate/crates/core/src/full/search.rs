//! Backtracking search for a full orientation of a tiny complete
//! multipartite graph.
//!
//! Vertices are decided one at a time in index order; vertex `v` of class
//! `c` picks its "row", the orientation toward every vertex of classes
//! `0..c`, encoded as a bitmask (bit `u` set for `u -> v`). Rows within a
//! class are non-decreasing, which is a valid symmetry reduction: sorting
//! class 1 by row, then class 2, and so on never disturbs rows already
//! sorted. After each row every requirement `(class i, set U)` is checked
//! for whether its missing sign vectors can still be supplied by the
//! candidates of `P_i` with undecided pairs.

use super::{FullError, FullTarget, Verification, MAX_VERIFY_ARITY};

/// Default node budget for [`super::full_orientation_of_size`].
pub const DEFAULT_SEARCH_NODES: u64 = 200_000_000;

struct Search {
    n: usize,
    total: usize,
    all: u8,
    /// `orient[u * total + v]` is set when `u -> v` has been decided.
    orient: Vec<bool>,
    decided_rows: usize,
    groups: Vec<(usize, Vec<usize>)>,
    nodes: u64,
    budget: u64,
}

fn combinations(items: &[usize], t: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, t, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, t, 0, &mut Vec::new(), &mut out);
    out
}

impl Search {
    fn class_of(&self, v: usize) -> usize {
        v / self.n
    }

    fn decided(&self, a: usize, b: usize) -> bool {
        // a pair is decided once its later vertex has chosen a row
        a.max(b) < self.decided_rows && self.class_of(a) != self.class_of(b)
    }

    /// Patterns (bit `p` of the result) vertex `x` may still realise toward
    /// `u`; pattern bit `j` set means `In` toward `u[j]`.
    fn compatible(&self, x: usize, u: &[usize]) -> (u8, bool) {
        let mut mask = self.all;
        let mut complete = true;
        for (j, &s) in u.iter().enumerate() {
            if !self.decided(x, s) {
                complete = false;
                continue;
            }
            let x_in = self.orient[s * self.total + x];
            for p in 0..self.all.count_ones() {
                if (p >> j & 1 == 1) != x_in {
                    mask &= !(1u8 << p);
                }
            }
        }
        (mask, complete)
    }

    fn feasible(&self) -> bool {
        for (class, u) in &self.groups {
            let mut realised = 0u8;
            let mut pending = 0usize;
            let mut reachable = 0u8;
            for x in class * self.n..(class + 1) * self.n {
                let (mask, complete) = self.compatible(x, u);
                if complete {
                    realised |= mask;
                } else {
                    pending += 1;
                    reachable |= mask;
                }
            }
            let missing = self.all & !realised;
            if missing.count_ones() as usize > pending || missing & !reachable != 0 {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, v: usize, floor: u64) -> Result<bool, FullError> {
        if v == self.total {
            return Ok(true);
        }
        let class = self.class_of(v);
        let m = class * self.n;
        let first_in_class = v.is_multiple_of(self.n);
        let start = if first_in_class { 0 } else { floor };
        for row in start..1u64 << m {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(FullError::BudgetExceeded {
                    cost: self.nodes as u128,
                    budget: self.budget as u128,
                });
            }
            for u in 0..m {
                let fwd = row >> u & 1 == 1;
                self.orient[u * self.total + v] = fwd;
                self.orient[v * self.total + u] = !fwd;
            }
            self.decided_rows = v + 1;
            if self.feasible() && self.dfs(v + 1, row)? {
                return Ok(true);
            }
        }
        self.decided_rows = v;
        Ok(false)
    }
}

pub(super) fn search_full(
    k: usize,
    d: usize,
    n: usize,
    budget: u64,
) -> Result<Option<FullTarget>, FullError> {
    if d > MAX_VERIFY_ARITY {
        return Err(FullError::InvalidParameters(format!("arity {d} above {MAX_VERIFY_ARITY}")));
    }
    if k < 2 || n == 0 || (k - 1) * n > 63 {
        return Err(FullError::InvalidParameters(format!("k = {k}, N = {n} out of range")));
    }
    let total = k * n;
    let mut groups = Vec::new();
    for class in 0..k {
        let outside: Vec<usize> = (0..total).filter(|&v| v / n != class).collect();
        let t = d.min(outside.len());
        groups.extend(combinations(&outside, t).into_iter().map(|u| (class, u)));
    }
    let t = d.min((k - 1) * n);
    let mut s = Search {
        n,
        total,
        all: ((1u16 << (1 << t)) - 1) as u8,
        orient: vec![false; total * total],
        decided_rows: 0,
        groups,
        nodes: 0,
        budget,
    };
    if !s.dfs(0, 0)? {
        return Ok(None);
    }
    let h = FullTarget::from_fn(k, d, n, |u, v| s.orient[u * total + v]);
    let (h, verdict) = h.certify(u128::MAX)?;
    assert_eq!(verdict, Verification::Full, "search result failed verification");
    Ok(Some(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::full::verify_full;

    #[test]
    fn combination_counts() {
        let items: Vec<usize> = (0..6).collect();
        assert_eq!(combinations(&items, 2).len(), 15);
        assert_eq!(combinations(&items, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn agrees_with_verifier_on_small_cases() {
        assert!(search_full(2, 1, 1, DEFAULT_SEARCH_NODES).unwrap().is_none());
        let h = search_full(2, 1, 2, DEFAULT_SEARCH_NODES).unwrap().unwrap();
        assert_eq!(verify_full(&h, u128::MAX).unwrap(), Verification::Full);
    }
}
