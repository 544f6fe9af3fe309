//! Canonical labelling for very small graphs by exhaustive minimisation.
//!
//! Vertices are first sorted into cells by an isomorphism-invariant key; only
//! relabellings that keep the cells in ascending key order are tried, and the
//! smallest code wins. The result is a complete invariant as long as `key` is
//! itself invariant under isomorphism.

/// Returns `(code, relabel)` where `relabel[i]` is the original vertex that
/// receives label `i` in the minimising relabelling.
pub fn canonical_code<F>(key: &[u64], code: F) -> (u64, Vec<usize>)
where
    F: Fn(&[usize]) -> u64,
{
    let n = key.len();
    let mut by_key: Vec<usize> = (0..n).collect();
    by_key.sort_by_key(|&v| (key[v], v));
    // cells[i] = range of positions sharing a key
    let mut cells = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || key[by_key[i]] != key[by_key[start]] {
            cells.push((start, i));
            start = i;
        }
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut perm = by_key.clone();
    permute_cells(&mut perm, &cells, 0, &code, &mut best);
    best.unwrap_or((0, Vec::new()))
}

fn permute_cells<F>(
    perm: &mut Vec<usize>,
    cells: &[(usize, usize)],
    cell: usize,
    code: &F,
    best: &mut Option<(u64, Vec<usize>)>,
) where
    F: Fn(&[usize]) -> u64,
{
    if cell == cells.len() {
        let c = code(perm);
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            *best = Some((c, perm.clone()));
        }
        return;
    }
    let (lo, hi) = cells[cell];
    heap_permute(perm, lo, hi - lo, &mut |p| permute_cells(p, cells, cell + 1, code, best));
}

/// Heap's algorithm over the first `k` entries of `perm[lo..]`, calling `visit` once per
/// arrangement.
fn heap_permute<V>(perm: &mut Vec<usize>, lo: usize, k: usize, visit: &mut V)
where
    V: FnMut(&mut Vec<usize>),
{
    if k <= 1 {
        visit(perm);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(perm, lo, k - 1, visit);
        if k.is_multiple_of(2) {
            perm.swap(lo + i, lo + k - 1);
        } else {
            perm.swap(lo, lo + k - 1);
        }
    }
    heap_permute(perm, lo, k - 1, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_every_arrangement_once() {
        let mut seen = std::collections::BTreeSet::new();
        let mut perm: Vec<usize> = (0..5).collect();
        heap_permute(&mut perm, 1, 4, &mut |p| {
            seen.insert(p.clone());
        });
        assert_eq!(seen.len(), 24);
        assert!(seen.iter().all(|p| p[0] == 0));
    }
}
