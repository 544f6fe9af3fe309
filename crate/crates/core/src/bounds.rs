//! Numeric bounds on the oriented chromatic number of graphs of Euler genus
//! `g`: Euler-formula estimates, Lambert W, and the lower and upper bound
//! formulas.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::full::sample_class_size;
use crate::graph::SimpleGraph;
use crate::params::SurfaceParams;

pub const LAMBERT_MAX_ITERATIONS: usize = 100;
/// Smallest genus for which the lower bound applies.
pub const LOWER_BOUND_MIN_GENUS: usize = 11;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("Newton iteration for W0({x}) did not converge in {iterations} steps")]
    NonConvergence { x: f64, iterations: usize },
    #[error("precondition not met: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    GenusUpper,
    OrderUpper,
    ChiLower,
    ChiUpper,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub g: Option<usize>,
    pub n: Option<usize>,
    pub e: Option<usize>,
    pub bound_value: f64,
    /// For [`BoundKind::ChiUpper`]: `(144g − 162)·⌈8^10 ln(144g − 162)⌉`.
    pub intermediate: Option<f64>,
}

impl BoundReport {
    fn new(kind: BoundKind, bound_value: f64) -> Self {
        BoundReport { kind, g: None, n: None, e: None, bound_value, intermediate: None }
    }
}

/// Euler genus upper bound `(k − 1)n + 1` with `k = e / n`, i.e. `e − n + 1`.
pub fn genus_upper_from_edges(n: usize, e: usize) -> Result<BoundReport, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain("n must be at least 1".into()));
    }
    let value = e as f64 - n as f64 + 1.0;
    Ok(BoundReport { n: Some(n), e: Some(e), ..BoundReport::new(BoundKind::GenusUpper, value) })
}

/// A graph of Euler genus `g` and minimum degree at least `k + 6` has fewer
/// than `6g / k` vertices.
pub fn order_upper_from_min_degree(g: usize, k: usize) -> Result<BoundReport, BoundsError> {
    if g < 2 || k == 0 {
        return Err(BoundsError::Domain(format!("need g >= 2 and k >= 1, got g = {g}, k = {k}")));
    }
    let value = 6.0 * g as f64 / k as f64;
    Ok(BoundReport { g: Some(g), ..BoundReport::new(BoundKind::OrderUpper, value) })
}

/// [`order_upper_from_min_degree`] applied to a concrete graph, refusing
/// when its minimum degree is below `k + 6`.
pub fn order_upper_for_graph(graph: &SimpleGraph, g: usize, k: usize) -> Result<BoundReport, BoundsError> {
    let min = (0..graph.n()).map(|v| graph.degree(v)).min().unwrap_or(0);
    if min < k + 6 {
        return Err(BoundsError::Precondition(format!("minimum degree {min} is below k + 6 = {}", k + 6)));
    }
    let mut r = order_upper_from_min_degree(g, k)?;
    r.n = Some(graph.n());
    r.e = Some(graph.edge_count());
    Ok(r)
}

/// Principal branch of Lambert W on `x >= 0`, by Newton iteration from
/// `ln(1 + x)` until `|y e^y − x| <= 1e-12 · max(1, x)`.
pub fn lambert_w0(x: f64) -> Result<f64, BoundsError> {
    if x < 0.0 || !x.is_finite() {
        return Err(BoundsError::Domain(format!("W0 needs a finite x >= 0, got {x}")));
    }
    let tol = 1e-12 * x.max(1.0);
    let mut y = x.ln_1p();
    for _ in 0..LAMBERT_MAX_ITERATIONS {
        let ey = y.exp();
        let residual = y * ey - x;
        if residual.abs() <= tol {
            return Ok(y);
        }
        y -= residual / (ey * (y + 1.0));
    }
    Err(BoundsError::NonConvergence { x, iterations: LAMBERT_MAX_ITERATIONS })
}

fn check_lower_domain(g: usize) -> Result<(), BoundsError> {
    if g < LOWER_BOUND_MIN_GENUS {
        return Err(BoundsError::Domain(format!("lower bound needs g >= 11, got {g}")));
    }
    Ok(())
}

/// `ln 2 (g − 1) / (ln(g − 1) + ln ln 2 − ln 2)`.
pub fn chi_lower_bound(g: usize) -> Result<BoundReport, BoundsError> {
    check_lower_domain(g)?;
    let ln2 = std::f64::consts::LN_2;
    let gm = (g - 1) as f64;
    let value = ln2 * gm / (gm.ln() + ln2.ln() - ln2);
    Ok(BoundReport { g: Some(g), ..BoundReport::new(BoundKind::ChiLower, value) })
}

/// Whether an oriented clique on `n` vertices with `n log2 n` edges fits in
/// Euler genus `g`: `g >= (log2 n − 1) n + 1`.
fn clique_fits(g: usize, n: usize) -> bool {
    let n = n as f64;
    g as f64 >= (n.log2() - 1.0) * n + 1.0
}

/// Greatest `n` with `g >= (log2 n − 1) n + 1`. The right side increases in
/// `n` for `n >= 2`, so the answer is found by doubling then bisection.
pub fn extremal_clique_order(g: usize) -> Result<usize, BoundsError> {
    check_lower_domain(g)?;
    let mut lo = 5;
    debug_assert!(clique_fits(g, lo));
    let mut hi = lo * 2;
    while clique_fits(g, hi) {
        lo = hi;
        hi *= 2;
    }
    // clique_fits(lo) && !clique_fits(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if clique_fits(g, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `2^40 g ln g`, with the intermediate `(144g − 162)·⌈8^10 ln(144g − 162)⌉`
/// that it dominates.
pub fn chi_upper_bound(g: usize) -> Result<BoundReport, BoundsError> {
    let params = SurfaceParams::new(g).map_err(|e| BoundsError::Domain(e.to_string()))?;
    let k = params.total_classes;
    let value = 2f64.powi(40) * g as f64 * (g as f64).ln();
    let intermediate = k as f64 * sample_class_size(k, params.fullness_arity) as f64;
    assert!(intermediate <= value, "intermediate {intermediate} exceeds 2^40 g ln g = {value} at g = {g}");
    Ok(BoundReport {
        g: Some(g),
        intermediate: Some(intermediate),
        ..BoundReport::new(BoundKind::ChiUpper, value)
    })
}

/// Cell value for a bound outside its domain.
pub const DOMAIN_ERROR: &str = "DomainError";

/// CSV rows `g,chi_lower,clique_order,chi_upper_intermediate,chi_upper`.
/// Lower-bound columns hold [`DOMAIN_ERROR`] below genus 11, and every
/// column does below genus 2.
pub fn bounds_table(genera: impl IntoIterator<Item = usize>) -> Result<String, BoundsError> {
    let mut out = String::from("g,chi_lower,clique_order,chi_upper_intermediate,chi_upper\n");
    for g in genera {
        let (lower, order) = if g >= LOWER_BOUND_MIN_GENUS {
            (format!("{:.6}", chi_lower_bound(g)?.bound_value), extremal_clique_order(g)?.to_string())
        } else {
            (DOMAIN_ERROR.to_string(), DOMAIN_ERROR.to_string())
        };
        let (mid, upper) = match chi_upper_bound(g) {
            Ok(r) => {
                (format!("{:.6e}", r.intermediate.unwrap_or(f64::NAN)), format!("{:.6e}", r.bound_value))
            }
            Err(BoundsError::Domain(_)) => (DOMAIN_ERROR.to_string(), DOMAIN_ERROR.to_string()),
            Err(e) => return Err(e),
        };
        let _ = writeln!(out, "{g},{lower},{order},{mid},{upper}");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_from_edges() {
        assert_eq!(genus_upper_from_edges(4, 6).unwrap().bound_value, 3.0);
        assert_eq!(genus_upper_from_edges(10, 9).unwrap().bound_value, 0.0);
        assert_eq!(genus_upper_from_edges(5, 12).unwrap().bound_value, 8.0);
        assert!(genus_upper_from_edges(0, 0).is_err());
    }

    #[test]
    fn order_from_min_degree() {
        assert_eq!(order_upper_from_min_degree(2, 1).unwrap().bound_value, 12.0);
        assert_eq!(order_upper_from_min_degree(2, 6).unwrap().bound_value, 2.0);
        let k7 = SimpleGraph::complete(7);
        assert!(matches!(order_upper_for_graph(&k7, 2, 1), Err(BoundsError::Precondition(_))));
    }

    #[test]
    fn lambert_values() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!((lambert_w0(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-12);
        assert!((lambert_w0(10.0).unwrap() - 1.745528).abs() < 1e-6);
        assert!(lambert_w0(-1.0).is_err());
        assert!(lambert_w0(f64::NAN).is_err());
    }

    #[test]
    fn lower_bound_values() {
        assert!((chi_lower_bound(11).unwrap().bound_value - 5.5766).abs() < 1e-3);
        assert!((chi_lower_bound(100).unwrap().bound_value - 19.41).abs() < 1e-2);
        assert!(chi_lower_bound(10).is_err());
    }

    #[test]
    fn clique_order_values() {
        assert_eq!(extremal_clique_order(11).unwrap(), 6);
        assert!(extremal_clique_order(10).is_err());
        let mut last = 0;
        for g in 11..3000 {
            let n = extremal_clique_order(g).unwrap();
            assert!(n >= last && n >= 5);
            assert!(clique_fits(g, n) && !clique_fits(g, n + 1));
            last = n;
        }
    }

    #[test]
    fn upper_bound_values() {
        let r = chi_upper_bound(2).unwrap();
        assert!((r.bound_value - 2f64.powi(41) * std::f64::consts::LN_2).abs() < 1.0);
        assert!((r.bound_value / 1.524e12 - 1.0).abs() < 1e-3);
        let expected = 126.0 * (8f64.powi(10) * 126f64.ln()).ceil();
        assert_eq!(r.intermediate, Some(expected));
        assert!(chi_upper_bound(1).is_err());
        assert!(chi_upper_bound(3).unwrap().bound_value > r.bound_value);
    }

    #[test]
    fn table_shape() {
        let t = bounds_table([0, 2, 11]).unwrap();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "0,DomainError,DomainError,DomainError,DomainError");
        assert_eq!(lines[2].split(',').take(3).collect::<Vec<_>>(), ["2", "DomainError", "DomainError"]);
        assert!(lines[3].starts_with("11,5.57"));
    }
}
