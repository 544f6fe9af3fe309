//! The acceptance checks, runnable from tests and from the command line.
//!
//! Each runner returns a [`CriterionReport`] instead of panicking, so a
//! failing check is reported with its reason and the others still run.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::bounds::{chi_lower_bound, extremal_clique_order, lambert_w0};
use crate::dipath::{greedy_palette_bound, greedy_two_dipath, two_dipath_conflicts};
use crate::fixtures;
use crate::full::{
    failure_probability_bound, full_orientation_of_size, sample_class_size, sample_full,
    sample_full_with_size, verify_full, LazyTarget, TargetFile, Verification, DEFAULT_SEARCH_NODES,
    DEFAULT_VERIFY_BUDGET,
};
use crate::graph::generate::{
    all_oriented_graphs, random_degenerate, random_graph, random_orientation, random_planar_degenerate,
    random_planar_triangulation, toroidal_grid, triangular_torus,
};
use crate::graph::{degeneracy_ordering, directed_square, is_oriented_clique, OrientedGraph};
use crate::oracles::{
    exact_oriented_chromatic, exact_two_dipath, min_arc_oriented_clique, oriented_clique_within_budget,
    validate_homomorphism, Witness,
};
use crate::params::SurfaceParams;
use crate::pipeline::{colour_surface_graph, discharge_check, reduce, PipelineOptions};
use crate::rng;

pub const DEFAULT_SEED: u64 = 0x05ee_d0fc_0105;

/// Frozen oracle values of `f(n)`, the fewest arcs in an oriented clique on
/// `n` vertices.
pub const F3: usize = 2;
pub const F4: usize = 4;

/// Number of inputs in the pipeline checks.
pub const PIPELINE_INPUTS: usize = 200;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub limit: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {} - {}: {} [{:.2}s, limit {}s]",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

/// Runs `body`, which returns the list of failed checks and a summary, and
/// folds the time limit into the verdict.
fn timed(
    id: u8,
    title: &'static str,
    limit_secs: u64,
    body: impl FnOnce() -> (Vec<String>, String),
) -> CriterionReport {
    let start = Instant::now();
    let (mut failures, summary) = body();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    if elapsed > limit {
        failures.push(format!("took {:.2}s", elapsed.as_secs_f64()));
    }
    let passed = failures.is_empty();
    let detail = if passed { summary } else { format!("{summary}; failed: {}", failures.join("; ")) };
    CriterionReport { id, title, passed, detail, elapsed, limit }
}

/// The hand-coded `(2,2,4)` example passes the verifier, and no `N = 3`
/// orientation is full.
pub fn criterion_1() -> CriterionReport {
    timed(1, "(2,2,4)-full example and N = 3 minimality", 1, || {
        let mut failures = Vec::new();
        let mut summary = Vec::new();
        match verify_full(&fixtures::two_class_example(), DEFAULT_VERIFY_BUDGET) {
            Ok(Verification::Full) => summary.push("example is full".to_string()),
            Ok(Verification::Failure(w)) => failures.push(format!(
                "example is not full: no class-{} vertex has signs {:?} toward {:?}",
                w.class, w.signs.0, w.subset
            )),
            Err(e) => failures.push(e.to_string()),
        }
        match full_orientation_of_size(2, 2, 3, DEFAULT_SEARCH_NODES) {
            Ok(None) => summary.push("no (2,2,3)-full orientation".to_string()),
            Ok(Some(_)) => failures.push("found a (2,2,3)-full orientation".into()),
            Err(e) => failures.push(e.to_string()),
        }
        (failures, summary.join(", "))
    })
}

/// The sampling runs behind criterion 2: one report line and the wall time
/// per run.
fn sampling_runs(seed: u64) -> Result<Vec<(String, Duration)>, String> {
    [(5, 2, None), (6, 2, None), (5, 2, Some(103))]
        .into_iter()
        .map(|(k, d, n)| {
            let start = Instant::now();
            let sample = match n {
                None => sample_full(k, d, seed, DEFAULT_VERIFY_BUDGET),
                Some(n) => sample_full_with_size(k, d, n, seed, DEFAULT_VERIFY_BUDGET),
            }
            .map_err(|e| format!("({k},{d}): {e}"))?;
            let elapsed = start.elapsed();
            let file = TargetFile::from_target(&sample.target);
            let line = format!(
                "k={k} d={d} N={} attempts={} {}",
                sample.target.class_size(),
                sample.attempts,
                serde_json::to_string(&file).expect("serialisable")
            );
            Ok((line, elapsed))
        })
        .collect()
}

/// Deterministic text of the sampling runs behind criterion 2.
pub fn sampling_report(seed: u64) -> Result<String, String> {
    Ok(sampling_runs(seed)?.into_iter().map(|(line, _)| line + "\n").collect())
}

/// Per-run wall-time limit for sampling.
pub const SAMPLE_SECONDS: u64 = 60;

/// Las Vegas sampling of `(5,2)` and `(6,2)` full graphs, and the union
/// bound at those sizes.
pub fn criterion_2(seed: u64) -> CriterionReport {
    timed(2, "sampling full graphs at desk scale", 3 * SAMPLE_SECONDS, || {
        let mut failures = Vec::new();
        let expected = [((5, 2), 104), ((6, 2), 115)];
        for ((k, d), n) in expected {
            if sample_class_size(k, d) != n {
                failures.push(format!("class size for ({k},{d}) is {}", sample_class_size(k, d)));
            }
        }
        for (k, d, n) in [(5, 2, 103), (5, 2, 104), (6, 2, 115)] {
            let p = failure_probability_bound(k, d, n);
            if p >= 1e-4 {
                failures.push(format!("bound at ({k},{d},{n}) is {p:.3e}"));
            }
        }
        let summary = match sampling_runs(seed) {
            Ok(runs) => {
                let mut lines = Vec::new();
                for (line, elapsed) in runs {
                    let head = line.split(" {").next().unwrap_or("").to_string();
                    let attempts: u64 =
                        head.rsplit("attempts=").next().and_then(|a| a.parse().ok()).unwrap_or(u64::MAX);
                    if attempts > crate::full::SAMPLE_RETRIES {
                        failures.push(format!("too many attempts: {head}"));
                    }
                    if elapsed > Duration::from_secs(SAMPLE_SECONDS) {
                        failures.push(format!("{head} took {:.1}s", elapsed.as_secs_f64()));
                    }
                    lines.push(format!("{head} in {:.1}s", elapsed.as_secs_f64()));
                }
                format!(
                    "{}; p(5,2,103) = {:.3e}, p(6,2,115) = {:.3e}",
                    lines.join(", "),
                    failure_probability_bound(5, 2, 103),
                    failure_probability_bound(6, 2, 115)
                )
            }
            Err(e) => {
                failures.push(e);
                String::from("sampling failed")
            }
        };
        (failures, summary)
    })
}

/// Greedy 2-dipath colouring respects its palette bound on random graphs.
pub fn criterion_3(seed: u64) -> CriterionReport {
    timed(3, "greedy 2-dipath palette bound", 30, || {
        let mut failures = Vec::new();
        let mut max_palette = 0;
        for i in 0..500u64 {
            let s = rng::derive(seed, i);
            let mut r = rng::stream(s);
            let n = r.random_range(1..=60);
            let base = if i % 2 == 0 {
                random_graph(n, r.random_range(0.02..0.3), s)
            } else {
                random_degenerate(n, r.random_range(1..=6), s)
            };
            let g = random_orientation(&base, rng::derive(s, 1));
            let ord = degeneracy_ordering(&g);
            let c = greedy_two_dipath(&g, &ord);
            let bound = greedy_palette_bound(ord.degeneracy, g.max_degree());
            max_palette = max_palette.max(c.palette_size);
            if c.palette_size > bound {
                failures.push(format!("graph {i}: palette {} > bound {bound}", c.palette_size));
            }
            if !two_dipath_conflicts(&g, &c.colours).is_empty()
                || !directed_square(&g).is_proper_colouring(&c.colours)
            {
                failures.push(format!("graph {i}: invalid colouring"));
            }
        }
        (failures, format!("500 graphs, largest palette {max_palette}"))
    })
}

fn sandwich_check(g: &OrientedGraph) -> Result<(), String> {
    let n = g.n();
    let co = exact_oriented_chromatic(g, n.clamp(1, 7))
        .map_err(|e| e.to_string())?
        .ok_or("no oriented colouring within n colours")?;
    let c2 = exact_two_dipath(g).map_err(|e| e.to_string())?;
    if c2.value > co.value {
        return Err(format!("chi2 {} > chi_o {}", c2.value, co.value));
    }
    if (co.value == n) != is_oriented_clique(g) {
        return Err(format!("chi_o = {} disagrees with the clique test", co.value));
    }
    match &co.witness {
        Witness::Homomorphism { target, map }
            if target.n() == co.value && validate_homomorphism(g, target, map) => {}
        _ => return Err("oriented colouring witness does not validate".into()),
    }
    match &c2.witness {
        Witness::Colouring(c)
            if c.len() == n
                && c.iter().all(|&x| (1..=c2.value).contains(&x))
                && two_dipath_conflicts(g, c).is_empty() => {}
        _ => return Err("2-dipath witness does not validate".into()),
    }
    Ok(())
}

/// Random oriented graph on `n` vertices, each pair absent or oriented
/// either way with probability 1/3.
fn random_pair_states(n: usize, seed: u64) -> OrientedGraph {
    let mut r = rng::stream(seed);
    let mut g = OrientedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            match r.random_range(0..3) {
                1 => g.add_arc(u, v).expect("fresh pair"),
                2 => g.add_arc(v, u).expect("fresh pair"),
                _ => {}
            }
        }
    }
    g
}

/// `χ₂ <= χ_o`, `χ_o = n` exactly for oriented cliques, and every witness
/// validates, on all small oriented graphs and sampled 5-vertex ones.
pub fn criterion_4(seed: u64) -> CriterionReport {
    timed(4, "oracle sandwich", 300, || {
        let mut failures = Vec::new();
        let mut count = 0;
        for n in 1..=4 {
            for g in all_oriented_graphs(n, 1 << 20).expect("3^6 states") {
                count += 1;
                if let Err(e) = sandwich_check(&g) {
                    failures.push(format!("{g:?}: {e}"));
                }
            }
        }
        for i in 0..2000 {
            let g = random_pair_states(5, rng::derive(seed, i));
            count += 1;
            if let Err(e) = sandwich_check(&g) {
                failures.push(format!("{g:?}: {e}"));
            }
        }
        failures.truncate(5);
        (failures, format!("{count} graphs checked"))
    })
}

/// Exhaustive `f(3)`, `f(4)` against frozen values, and a 5-vertex oriented
/// clique with at most `⌊5 log2 5⌋ = 11` arcs.
pub fn criterion_5(seed: u64) -> CriterionReport {
    timed(5, "fewest arcs in small oriented cliques", 120, || {
        let mut failures = Vec::new();
        let mut summary = Vec::new();
        for (n, frozen) in [(3, F3), (4, F4)] {
            match min_arc_oriented_clique(n) {
                Ok(r) => {
                    summary.push(format!("f({n}) = {}", r.value));
                    if r.value != frozen {
                        failures.push(format!("f({n}) = {} differs from {frozen}", r.value));
                    }
                    if !matches!(&r.witness, Witness::Clique(g) if is_oriented_clique(g) && g.arc_count() == r.value)
                    {
                        failures.push(format!("f({n}) witness invalid"));
                    }
                }
                Err(e) => failures.push(e.to_string()),
            }
        }
        let budget = (5f64 * 5f64.log2()).floor() as usize;
        match oriented_clique_within_budget(5, budget, seed) {
            Ok(Some(r)) => {
                let Witness::Clique(g) = &r.witness else { unreachable!("clique search") };
                let chi = exact_oriented_chromatic(g, 5).ok().flatten().map(|c| c.value);
                summary.push(format!("5-vertex clique with {} arcs", g.arc_count()));
                if !is_oriented_clique(g) || g.arc_count() > budget || chi != Some(5) {
                    failures.push("5-vertex witness invalid".into());
                }
            }
            Ok(None) => failures.push(format!("no 5-vertex clique with <= {budget} arcs found")),
            Err(e) => failures.push(e.to_string()),
        }
        (failures, summary.join(", "))
    })
}

/// The lower-bound chain over `g in 11..10^5` and Lambert W accuracy.
pub fn criterion_6() -> CriterionReport {
    timed(6, "lower-bound numerics", 10, || {
        let mut failures = Vec::new();
        for g in 11..100_000 {
            let order = extremal_clique_order(g).expect("g >= 11") as f64;
            let lower = chi_lower_bound(g).expect("g >= 11").bound_value;
            if order <= lower - 1.0 {
                failures.push(format!("g = {g}: order {order} <= {lower} - 1"));
                break;
            }
        }
        let (lo, hi) = (1.0f64, 1e9f64.ln());
        let mut worst = 0f64;
        for i in 0..1000 {
            let x = (lo + (hi - lo) * i as f64 / 999.0).exp();
            match lambert_w0(x) {
                Ok(y) => {
                    let residual = (y * y.exp() - x).abs() / x.max(1.0);
                    worst = worst.max(residual);
                    if residual > 1e-12 || y < x.ln() - x.ln().ln() {
                        failures.push(format!("W0({x}) = {y}"));
                    }
                }
                Err(e) => failures.push(e.to_string()),
            }
        }
        failures.truncate(5);
        (failures, format!("99989 genera, 1000 W0 points, worst relative residual {worst:.1e}"))
    })
}

/// A seeded input for the pipeline checks, with its asserted genus.
#[derive(Debug, Clone)]
pub struct PipelineInput {
    pub label: String,
    pub graph: OrientedGraph,
    pub genus: usize,
}

/// Toroidal grids, 6-regular torus triangulations, planar triangulations
/// and planar 3-degenerate graphs, all with at most 300 vertices.
pub fn pipeline_inputs(seed: u64) -> Vec<PipelineInput> {
    (0..PIPELINE_INPUTS as u64)
        .map(|i| {
            let s = rng::derive(seed, i);
            let mut r = rng::stream(s);
            let genus = 2 + (i as usize / 4) % 4;
            let (label, base) = match i % 4 {
                0 | 1 => {
                    let rows = r.random_range(3..=17);
                    let cols = r.random_range(3..=(300 / rows).min(17));
                    if i % 4 == 0 {
                        (format!("grid {rows}x{cols}"), toroidal_grid(rows, cols))
                    } else {
                        (format!("torus triangulation {rows}x{cols}"), triangular_torus(rows, cols))
                    }
                }
                2 => {
                    let n = r.random_range(4..=300);
                    (format!("planar triangulation n={n}"), random_planar_triangulation(n, n, s))
                }
                _ => {
                    let n = r.random_range(1..=300);
                    (format!("planar 3-degenerate n={n}"), random_planar_degenerate(n, s))
                }
            };
            let graph = random_orientation(&base, rng::derive(s, 7));
            PipelineInput { label: format!("#{i} {label} g={genus}"), graph, genus }
        })
        .collect()
}

/// Deterministic text of the pipeline runs behind criterion 7: one JSON
/// report and the image list per input.
pub fn pipeline_report(seed: u64) -> Result<String, String> {
    let mut out = String::new();
    for (i, input) in pipeline_inputs(seed).into_iter().enumerate() {
        let params = SurfaceParams::new(input.genus).expect("genus >= 2");
        let mut target = LazyTarget::for_params(&params, rng::derive(seed, 1000 + i as u64));
        let outcome = colour_surface_graph(
            &input.graph,
            input.genus,
            &mut target,
            PipelineOptions { check_replay: true, trace: false },
        )
        .map_err(|e| format!("{}: {e}", input.label))?;
        if !outcome.report.valid || !outcome.class_structure_ok {
            return Err(format!("{}: {:?}", input.label, outcome.report));
        }
        if outcome.replay_checks != outcome.steps.len() {
            return Err(format!("{}: replay not fully checked", input.label));
        }
        let images: Vec<String> = outcome
            .homomorphism
            .images()
            .iter()
            .map(|x| x.map_or_else(|| "-".into(), |x| format!("{:?}{}", x.class, x.index)))
            .collect();
        out.push_str(&format!(
            "{} {} {}\n",
            input.label,
            serde_json::to_string(&outcome.report).expect("serialisable"),
            images.join(",")
        ));
    }
    Ok(out)
}

/// Every pipeline input maps validly into the lazy target with the class
/// structure enforced, and every replay step is checked.
pub fn criterion_7(seed: u64) -> CriterionReport {
    timed(7, "pipeline soundness", 300, || match pipeline_report(seed) {
        Ok(report) => {
            let colours: Vec<usize> = report
                .lines()
                .filter_map(|l| l.split("\"colours_used\":").nth(1))
                .filter_map(|t| t.split(',').next()?.parse().ok())
                .collect();
            let max = colours.iter().max().copied().unwrap_or(0);
            (Vec::new(), format!("{} inputs valid, at most {max} colours used", colours.len()))
        }
        Err(e) => (vec![e], "pipeline failed".into()),
    })
}

/// Exact charge conservation and non-negative final charges on every core
/// from criterion 7, and the maximum degree bound.
pub fn criterion_8(seed: u64) -> CriterionReport {
    timed(8, "discharging on reduced cores", 300, || {
        let mut failures = Vec::new();
        let mut nonempty = 0;
        for input in pipeline_inputs(seed) {
            let (core, _) = reduce(&input.graph).compact_core();
            if core.n() > 0 {
                nonempty += 1;
            }
            match discharge_check(&core, input.genus) {
                Ok(out) => {
                    let s = out.summary;
                    if !s.conserved || !s.nonnegative || !s.max_degree_ok {
                        failures.push(format!("{}: {s:?}", input.label));
                    }
                }
                Err(e) => failures.push(format!("{}: {e}", input.label)),
            }
        }
        (failures, format!("{PIPELINE_INPUTS} cores checked, {nonempty} non-empty"))
    })
}

/// Criteria 2 and 7 produce byte-identical reports when repeated.
pub fn criterion_9(seed: u64) -> CriterionReport {
    timed(9, "determinism", 600, || {
        let mut failures = Vec::new();
        let a = (sampling_report(seed), pipeline_report(seed));
        let b = (sampling_report(seed), pipeline_report(seed));
        if a.0 != b.0 {
            failures.push("sampling reports differ".into());
        }
        if a.1 != b.1 {
            failures.push("pipeline reports differ".into());
        }
        let bytes = a.0.as_ref().map_or(0, |s| s.len()) + a.1.as_ref().map_or(0, |s| s.len());
        (failures, format!("{bytes} report bytes compared"))
    })
}

pub fn run(id: u8, seed: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(seed),
        3 => criterion_3(seed),
        4 => criterion_4(seed),
        5 => criterion_5(seed),
        6 => criterion_6(),
        7 => criterion_7(seed),
        8 => criterion_8(seed),
        9 => criterion_9(seed),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    (1..=9).filter_map(|id| run(id, seed)).collect()
}
