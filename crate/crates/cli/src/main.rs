use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use orichrome::bounds::bounds_table;
use orichrome::full::{
    build_restricted, minimal_full_n, sample_full, FullError, FullTarget, LazyTarget, Target, TargetClass,
    TargetFile, Verification, DEFAULT_VERIFY_BUDGET,
};
use orichrome::graph::generate::{generate, Family};
use orichrome::graph::io::{parse_edge_list, to_edge_list, GraphJson};
use orichrome::graph::OrientedGraph;
use orichrome::oracles::{
    exact_oriented_chromatic, exact_two_dipath, min_arc_oriented_clique, oriented_clique_within_budget,
    OracleError, SolveResult, Witness,
};
use orichrome::params::SurfaceParams;
use orichrome::pipeline::{colour_surface_graph, PipelineError, PipelineOptions, PipelineOutcome};
use orichrome::selftest;

/// Exit codes. 0 is success.
const EXIT_INPUT: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_GENUS: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Parser)]
#[command(name = "orichrome", version, about = "Oriented colouring of bounded-genus graphs")]
struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, env = "ORICHROME_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    /// Oriented chromatic number.
    Chio,
    /// 2-dipath chromatic number.
    Chi2,
    /// Fewest arcs in an oriented clique on `--n` vertices.
    Clique,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetKind {
    Lazy,
    File,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Edges,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run an exact oracle.
    Solve {
        which: Which,
        /// Graph file (edge list, or JSON `{"n", "arcs"}`).
        input: Option<PathBuf>,
        /// Largest number of colours tried for chio.
        #[arg(long, default_value_t = 7)]
        k_max: usize,
        /// Clique order for `clique`.
        #[arg(long)]
        n: Option<usize>,
        /// Arc budget for `clique`: search for any witness within it instead
        /// of the exact minimum.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Full multipartite targets.
    Full {
        #[command(subcommand)]
        action: FullAction,
    },
    /// Map a graph of Euler genus at most `g` into a full target.
    Colour {
        input: PathBuf,
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value_t = TargetKind::Lazy)]
        target: TargetKind,
        /// Target file for `--target file`.
        #[arg(long)]
        target_file: Option<PathBuf>,
        /// Free classes of a file target; the remaining classes form the
        /// reserved pool. Defaults to all but one class.
        #[arg(long)]
        free_classes: Option<usize>,
        /// Write the pipeline trace to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// CSV table of the genus bounds for `g_min..=g_max`.
    Bounds { g_min: usize, g_max: usize },
    /// Generate a seeded graph.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        #[arg(long, value_enum, default_value_t = Format::Edges, global = true)]
        format: Format,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum FullAction {
    /// Sample a certified `(k, d, N)`-full graph.
    Sample {
        k: usize,
        d: usize,
        /// Also write the target file here.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_VERIFY_BUDGET)]
        budget: u128,
    },
    /// Check a target file for fullness.
    Verify {
        file: PathBuf,
        /// Write the file with a certificate here when it verifies.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_VERIFY_BUDGET)]
        budget: u128,
    },
    /// Smallest class size admitting a full orientation.
    Minimal {
        k: usize,
        d: usize,
        #[arg(long, default_value_t = 8)]
        n_cap: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    Tournament { n: usize },
    Transitive { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Grid { rows: usize, cols: usize },
    Torus { rows: usize, cols: usize },
    Triangulation { n: usize },
    PlanarDegenerate { n: usize },
    Degenerate { n: usize, d: usize },
    Random { n: usize, p: f64 },
}

impl From<&GenFamily> for Family {
    fn from(f: &GenFamily) -> Family {
        match *f {
            GenFamily::Tournament { n } => Family::CompleteTournament { n },
            GenFamily::Transitive { n } => Family::TransitiveTournament { n },
            GenFamily::Cycle { n } => Family::DirectedCycle { n },
            GenFamily::Complete { n } => Family::Complete { n },
            GenFamily::Grid { rows, cols } => Family::ToroidalGrid { rows, cols },
            GenFamily::Torus { rows, cols } => Family::TriangularTorus { rows, cols },
            GenFamily::Triangulation { n } => Family::PlanarTriangulation { n },
            GenFamily::PlanarDegenerate { n } => Family::PlanarDegenerate { n },
            GenFamily::Degenerate { n, d } => Family::Degenerate { n, d },
            GenFamily::Random { n, p } => Family::Random { n, p },
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<OrientedGraph, Failure> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        serde_json::from_str::<GraphJson>(&text)
            .map_err(|e| e.to_string())
            .and_then(|j| OrientedGraph::try_from(j).map_err(|e| e.to_string()))
    } else {
        parse_edge_list(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_target(path: &Path) -> Result<FullTarget, Failure> {
    let file: TargetFile = serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    file.to_target().map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

/// Writes data to stdout. A closed pipe is not an error.
fn out(text: &str) {
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn emit(value: &Value) {
    out(&(serde_json::to_string_pretty(value).expect("serialisable") + "\n"));
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::CapExceeded { .. } => Failure::new(EXIT_CAP, e.to_string()),
    }
}

fn full_failure(e: FullError) -> Failure {
    let code = match e {
        FullError::BudgetExceeded { .. } => EXIT_CAP,
        FullError::InvalidParameters(_) | FullError::NotMultipartite(_) => EXIT_INPUT,
        FullError::NoSample(_) => EXIT_CHECK,
    };
    Failure::new(code, e.to_string())
}

fn map_object<I: IntoIterator<Item = (usize, Value)>>(pairs: I) -> Value {
    Value::Object(pairs.into_iter().map(|(v, x)| (v.to_string(), x)).collect::<Map<_, _>>())
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Homomorphism { target, map } => json!({
            "kind": "homomorphism",
            "target": GraphJson::from(target),
            "map": map_object(map.iter().enumerate().map(|(v, &x)| (v, json!(x)))),
        }),
        Witness::Colouring(c) => json!({
            "kind": "colouring",
            "colours": map_object(c.iter().enumerate().map(|(v, &x)| (v, json!(x)))),
        }),
        Witness::Clique(g) => json!({ "kind": "clique", "graph": GraphJson::from(g) }),
    }
}

fn result_json(which: &str, r: &SolveResult) -> Value {
    json!({
        "which": which,
        "value": r.value,
        "witness": witness_json(&r.witness),
        "nodes_explored": r.nodes_explored,
    })
}

fn cmd_solve(
    which: Which,
    input: Option<&Path>,
    k_max: usize,
    n: Option<usize>,
    budget: Option<usize>,
    seed: u64,
) -> CmdResult {
    let graph = || -> Result<OrientedGraph, Failure> {
        load_graph(input.ok_or_else(|| Failure::new(EXIT_INPUT, "an input graph is required"))?)
    };
    let report = match which {
        Which::Chio => {
            let g = graph()?;
            match exact_oriented_chromatic(&g, k_max).map_err(oracle_failure)? {
                Some(r) => result_json("chio", &r),
                None => {
                    return Err(Failure::new(
                        EXIT_CAP,
                        format!("no oriented colouring with at most {k_max} colours"),
                    ))
                }
            }
        }
        Which::Chi2 => result_json("chi2", &exact_two_dipath(&graph()?).map_err(oracle_failure)?),
        Which::Clique => {
            let n = n.ok_or_else(|| Failure::new(EXIT_INPUT, "clique needs --n"))?;
            match budget {
                None => result_json("clique", &min_arc_oriented_clique(n).map_err(oracle_failure)?),
                Some(b) => match oriented_clique_within_budget(n, b, seed).map_err(oracle_failure)? {
                    Some(r) => result_json("clique", &r),
                    None => json!({ "which": "clique", "found": false, "budget": b }),
                },
            }
        }
    };
    emit(&report);
    Ok(())
}

fn target_json(h: &FullTarget) -> String {
    serde_json::to_string_pretty(&TargetFile::from_target(h)).expect("serialisable")
}

fn cmd_full(action: &FullAction, seed: u64) -> CmdResult {
    match action {
        FullAction::Sample { k, d, output, budget } => {
            let sample = sample_full(*k, *d, seed, *budget).map_err(full_failure)?;
            eprintln!("sampled after {} attempt(s)", sample.attempts);
            let text = target_json(&sample.target);
            match output {
                Some(path) => {
                    write(path, &text)?;
                    emit(&json!({
                        "k": k,
                        "d": d,
                        "N": sample.target.class_size(),
                        "seed": sample.target.seed(),
                        "attempts": sample.attempts,
                        "verified": true,
                    }));
                }
                None => out(&(text + "\n")),
            }
        }
        FullAction::Verify { file, output, budget } => {
            let h = load_target(file)?;
            let (h, verdict) = h.certify(*budget).map_err(full_failure)?;
            let mut report = json!({ "k": h.k(), "d": h.d(), "N": h.class_size() });
            match verdict {
                Verification::Full => {
                    report["verified"] = json!(true);
                    if let Some(path) = output {
                        write(path, &target_json(&h))?;
                    }
                }
                Verification::Failure(w) => {
                    report["verified"] = json!(false);
                    report["witness"] = json!({
                        "class": w.class,
                        "subset": w.subset,
                        "signs": w.signs.values(),
                    });
                }
            }
            emit(&report);
        }
        FullAction::Minimal { k, d, n_cap, output } => {
            match minimal_full_n(*k, *d, *n_cap).map_err(full_failure)? {
                Some((n, h)) => {
                    if let Some(path) = output {
                        write(path, &target_json(&h))?;
                    }
                    emit(&json!({ "k": k, "d": d, "N": n }));
                }
                None => {
                    return Err(Failure::new(
                        EXIT_CAP,
                        format!("no ({k},{d},N)-full orientation with N <= {n_cap}"),
                    ))
                }
            }
        }
    }
    Ok(())
}

fn vertex_label(class: TargetClass, index: usize) -> String {
    match class {
        TargetClass::Reserved => format!("R{index}"),
        TargetClass::Free(i) => format!("F{i}.{index}"),
    }
}

fn outcome_json<V>(out: &PipelineOutcome<V>, label: impl Fn(V) -> String) -> Value
where
    V: Copy + Ord,
{
    let images = out
        .homomorphism
        .images()
        .iter()
        .enumerate()
        .map(|(v, x)| (v, x.map_or(Value::Null, |x| json!(label(x)))));
    json!({
        "report": out.report,
        "class_structure_ok": out.class_structure_ok,
        "discharge": out.discharge,
        "map": map_object(images),
    })
}

fn pipeline_failure(e: PipelineError) -> Failure {
    let code = match e {
        PipelineError::GenusTooSmall(_) | PipelineError::GenusAssumptionViolated(_) => EXIT_GENUS,
        PipelineError::Extend(_) | PipelineError::Defect(_) => EXIT_CHECK,
    };
    Failure::new(code, e.to_string())
}

fn cmd_colour(
    input: &Path,
    g: usize,
    kind: TargetKind,
    target_file: Option<&Path>,
    free_classes: Option<usize>,
    trace: bool,
    seed: u64,
) -> CmdResult {
    let graph = load_graph(input)?;
    let options = PipelineOptions { check_replay: true, trace };
    let report = match kind {
        TargetKind::Lazy => {
            let params = SurfaceParams::new(g)
                .map_err(|e| Failure::new(EXIT_GENUS, format!("genus must be at least 2, got {}", e.0)))?;
            let mut target = LazyTarget::for_params(&params, seed);
            let out = colour_surface_graph(&graph, g, &mut target, options).map_err(pipeline_failure)?;
            for line in &out.trace {
                eprintln!("{line}");
            }
            eprintln!("minted {} target vertices", target.minted_count());
            outcome_json(&out, |x| vertex_label(x.class, x.index))
        }
        TargetKind::File => {
            let path =
                target_file.ok_or_else(|| Failure::new(EXIT_INPUT, "--target file needs --target-file"))?;
            let base = load_target(path)?;
            let free = free_classes.unwrap_or(base.k().saturating_sub(1));
            if free == 0 || free >= base.k() {
                return Err(Failure::new(EXIT_INPUT, format!("free classes must lie in 1..{}, got {free}", base.k())));
            }
            let mut target = build_restricted(base, free);
            let out = colour_surface_graph(&graph, g, &mut target, options).map_err(pipeline_failure)?;
            for line in &out.trace {
                eprintln!("{line}");
            }
            let t = &target;
            outcome_json(&out, |x| match t.class_of(x) {
                TargetClass::Reserved => format!("R{x}"),
                TargetClass::Free(i) => format!("F{i}.{x}"),
            })
        }
    };
    emit(&report);
    Ok(())
}

fn cmd_gen(family: &GenFamily, format: Format, seed: u64) -> CmdResult {
    if let GenFamily::Random { p, .. } = family {
        if !(0.0..=1.0).contains(p) {
            return Err(Failure::new(EXIT_INPUT, format!("p = {p} is not a probability")));
        }
    }
    let g = generate(&Family::from(family), seed);
    match format {
        Format::Edges => out(&to_edge_list(&g)),
        Format::Json => out(&(serde_json::to_string(&GraphJson::from(&g)).expect("serialisable") + "\n")),
    }
    Ok(())
}

fn cmd_selftest(only: &[u8], seed: u64) -> CmdResult {
    let ids: Vec<u8> = if only.is_empty() { (1..=9).collect() } else { only.to_vec() };
    let mut failed = Vec::new();
    for id in ids {
        let report =
            selftest::run(id, seed).ok_or_else(|| Failure::new(EXIT_INPUT, format!("no criterion {id}")))?;
        out(&format!("{report}\n"));
        if !report.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_CHECK, format!("failed criteria: {failed:?}")))
    }
}

fn run(cli: &Cli) -> CmdResult {
    let seed = cli.seed;
    match &cli.command {
        Command::Solve { which, input, k_max, n, budget } => {
            cmd_solve(*which, input.as_deref(), *k_max, *n, *budget, seed)
        }
        Command::Full { action } => cmd_full(action, seed),
        Command::Colour { input, g, target, target_file, free_classes, trace } => {
            cmd_colour(input, *g, *target, target_file.as_deref(), *free_classes, *trace, seed)
        }
        Command::Bounds { g_min, g_max } => {
            let table = bounds_table(*g_min..=*g_max).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
            out(&table);
            Ok(())
        }
        Command::Gen { family, format } => cmd_gen(family, *format, seed),
        Command::Selftest { only } => cmd_selftest(only, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
