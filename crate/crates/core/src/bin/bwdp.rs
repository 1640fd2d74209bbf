//! Batch front end: solve, reduce, verify, build and check decompositions,
//! generate instances.
//!
//! Exit codes: 0 solved or ok, 10 yes, 20 no, 1 verification violation,
//! 2 parse or precondition error, 3 cap or timeout.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use bwdp::decomp::{
    build_branch_decomposition, min_fill_tree_decomposition, validate_tree_decomposition, BranchDecomposition,
    BuildStrategy, RootedBranchDecomposition, TreeDecomposition,
};
use bwdp::dp::{max_cycle_packing, solve_cycle_packing, solve_disjoint_paths, solve_mdp, Prune};
use bwdp::embedding::{euler_check, grid_embedding, parse_embedding, RotationSystem};
use bwdp::generators::{random_hitting_set, random_planar, rng};
use bwdp::graph::{parse_instance, write_instance, Instance};
use bwdp::oracle::{
    brute_3coloring, brute_hitting_set, verify_witness, ColoringOutcome, HittingSetInstance, Problem, Witness,
    WitnessKind, MAX_HITTING_SET_K,
};
use bwdp::par;
use bwdp::reductions::{
    reduce_3col_to_planar3col, reduce_hs_to_mdp, reduce_planar3col_to_cycle_packing,
    reduce_planar3col_to_disjoint_paths, validate_reduction, Check, ReductionOutput,
};
use bwdp::{Error, Graph};

#[derive(Parser)]
#[command(name = "bwdp", version, about = "Branch-decomposition solvers and gadget reductions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Debug)]
struct Common {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Result file (solve, verify, decomp-*) or file prefix (reduce, gen).
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    l0: Option<usize>,
    #[arg(long, value_enum, default_value = "none")]
    prune: PruneArg,
    /// Largest decomposition width (DP solvers), vertex count (3col) or k
    /// (hitting-set) accepted.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Worker threads for the merges; 0 uses the default pool.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PruneArg {
    None,
    Noncrossing,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ProblemArg {
    CyclePacking,
    Mdp,
    DisjointPaths,
    #[value(name = "3col")]
    ThreeCol,
    HittingSet,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReduceArg {
    #[value(name = "3col-to-planar3col")]
    ToPlanar,
    #[value(name = "3col-to-cycle-packing")]
    ToCyclePacking,
    #[value(name = "3col-to-disjoint-paths")]
    ToDisjointPaths,
    HsToMdp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DecompKind {
    Branch,
    Tree,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    MinFill,
    Caterpillar,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenArg {
    Grid,
    Planar,
    Hs,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance and write the decision, witness and table statistics.
    Solve {
        #[arg(value_enum)]
        problem: ProblemArg,
        #[command(flatten)]
        c: Common,
        /// Rotation system, needed for non-crossing pruning.
        #[arg(long)]
        embedding: Option<PathBuf>,
        /// Branch decomposition to use instead of the built-in heuristic.
        #[arg(long)]
        decomp: Option<PathBuf>,
    },
    /// Generate a reduced instance together with its sidecar files.
    Reduce {
        #[arg(value_enum)]
        name: ReduceArg,
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        embedding: Option<PathBuf>,
    },
    /// Check a witness against an instance.
    Verify {
        #[arg(value_enum)]
        problem: ProblemArg,
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        witness: PathBuf,
    },
    DecompBuild {
        #[command(flatten)]
        c: Common,
        #[arg(long, value_enum, default_value = "branch")]
        kind: DecompKind,
        #[arg(long, value_enum, default_value = "min-fill")]
        strategy: StrategyArg,
    },
    DecompValidate {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        decomp: PathBuf,
        #[arg(long, value_enum, default_value = "branch")]
        kind: DecompKind,
    },
    /// Generate grids, random planar graphs or hitting-set instances.
    Gen {
        #[arg(value_enum)]
        what: GenArg,
        #[command(flatten)]
        c: Common,
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 3)]
        cols: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        side: usize,
        #[arg(long, default_value_t = 0.6)]
        p: f64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
}

struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded(_) | Error::Timeout(_) => 3,
            _ => 2,
        };
        Fail { code, msg: e.to_string() }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Fail {
    Fail { code, msg: msg.into() }
}

type Out<T> = std::result::Result<T, Fail>;

fn read(path: &Path) -> Out<String> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Out<()> {
    fs::write(path, text).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn input(c: &Common) -> Out<String> {
    read(c.input.as_deref().ok_or_else(|| fail(2, "--input is required"))?)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Key/value report followed by an optional witness.
#[derive(Default)]
struct Report {
    fields: Vec<(String, Value)>,
    witness: Option<Witness>,
}

impl Report {
    fn set(&mut self, k: &str, v: impl Into<Value>) {
        self.fields.push((k.to_string(), v.into()));
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &self.fields {
                    match v {
                        Value::String(s) => writeln!(out, "{k}={s}").unwrap(),
                        other => writeln!(out, "{k}={other}").unwrap(),
                    }
                }
                if let Some(w) = &self.witness {
                    out.push_str(&w.to_text());
                }
                out
            }
            Format::Json => {
                let mut map = Map::new();
                for (k, v) in &self.fields {
                    map.insert(k.clone(), v.clone());
                }
                if let Some(w) = &self.witness {
                    let wv = match w {
                        Witness::Cycles(c) => json!({ "cycles": c }),
                        Witness::Paths(p) => json!({ "paths": p }),
                        Witness::Coloring(c) => json!({ "coloring": c }),
                        Witness::Selection(s) => json!({ "selection": s }),
                    };
                    map.insert("witness".into(), wv);
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json");
                s.push('\n');
                s
            }
        }
    }

    fn emit(&self, c: &Common) -> Out<()> {
        let text = self.render(c.format);
        match &c.output {
            Some(p) => write(p, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Runs `f` on a worker thread with the configured pool size; gives up with
/// exit code 3 once the timeout passes.
fn bounded<T: Send + 'static>(c: &Common, f: impl FnOnce() -> T + Send + 'static) -> Out<T> {
    let workers = c.workers;
    let (tx, rx) = mpsc::channel();
    std::thread::Builder::new()
        .stack_size(64 << 20)
        .spawn(move || {
            let _ = tx.send(par::with_workers(workers, f));
        })
        .map_err(|e| fail(2, e.to_string()))?;
    match c.timeout_ms {
        Some(ms) => rx.recv_timeout(Duration::from_millis(ms)).map_err(|_| fail(3, format!("timed out after {ms} ms"))),
        None => rx.recv().map_err(|_| fail(2, "solver thread failed")),
    }
}

fn decomposition(g: &Graph, path: Option<&Path>) -> Out<RootedBranchDecomposition> {
    let bd = match path {
        Some(p) => BranchDecomposition::parse(&read(p)?)?,
        None => build_branch_decomposition(g, BuildStrategy::FromTreeDecomposition)?,
    };
    Ok(RootedBranchDecomposition::new(g, &bd)?)
}

fn check_width(c: &Common, width: usize) -> Out<()> {
    match c.cap {
        Some(cap) if width > cap => Err(fail(3, format!("decomposition width {width} exceeds the cap of {cap}"))),
        _ => Ok(()),
    }
}

fn stats_fields(r: &mut Report, width: usize, stats: &bwdp::dp::TableStats) {
    r.set("width", width);
    r.set("max_states", stats.max_states());
    r.set("total_states", stats.total_states());
    r.set("bound_violations", stats.bound_violations().len());
    r.set("pruned", stats.pruned);
}

fn yes_no(r: &mut Report, yes: bool) -> u8 {
    r.set("answer", if yes { "yes" } else { "no" });
    if yes {
        10
    } else {
        20
    }
}

fn cmd_solve(problem: ProblemArg, c: &Common, embedding: Option<&Path>, decomp: Option<&Path>) -> Out<u8> {
    let text = input(c)?;
    let mut r = Report::default();
    let started = Instant::now();
    let code = match problem {
        ProblemArg::CyclePacking => {
            let inst = parse_instance(&text)?;
            let g = inst.graph.graph;
            let prune = match c.prune {
                PruneArg::None => Prune::None,
                PruneArg::Noncrossing => Prune::Noncrossing,
            };
            let rs = match embedding {
                Some(p) => Some(parse_embedding(&g, &read(p)?)?),
                None if matches!(prune, Prune::Noncrossing) => {
                    return Err(fail(2, "--prune noncrossing needs --embedding"));
                }
                None => None,
            };
            r.set("problem", "cycle-packing");
            if g.m() == 0 {
                stats_fields(&mut r, 0, &Default::default());
                r.witness = Some(Witness::Cycles(Vec::new()));
                match c.l0 {
                    Some(l0) => yes_no(&mut r, l0 == 0),
                    None => {
                        r.set("best", 0);
                        0
                    }
                }
            } else {
                let rbd = decomposition(&g, decomp)?;
                check_width(c, rbd.width())?;
                let width = rbd.width();
                let l0 = c.l0;
                let sol = bounded(c, move || match l0 {
                    Some(l0) => solve_cycle_packing(&g, l0, &rbd, prune, rs.as_ref()),
                    None => max_cycle_packing(&g, BuildStrategy::FromTreeDecomposition, prune, rs.as_ref()),
                })??;
                if let Some(l0) = c.l0 {
                    r.set("l0", l0);
                }
                r.set("best", sol.best);
                stats_fields(&mut r, width, &sol.stats);
                let code = match c.l0 {
                    Some(_) => yes_no(&mut r, sol.yes),
                    None => 0,
                };
                if sol.yes {
                    r.witness = sol.witness.map(Witness::Cycles);
                }
                code
            }
        }
        ProblemArg::Mdp | ProblemArg::DisjointPaths => {
            let inst = parse_instance(&text)?;
            let mono = matches!(problem, ProblemArg::Mdp);
            r.set("problem", if mono { "mdp" } else { "disjoint-paths" });
            r.set("requests", inst.requests.len());
            let g = &inst.graph.graph;
            let rbd = if g.m() > 0 { Some(decomposition(g, decomp)?) } else { None };
            let width = rbd.as_ref().map_or(0, |r| r.width());
            check_width(c, width)?;
            let sol = bounded(c, move || {
                if mono {
                    solve_mdp(&inst.graph, &inst.requests, rbd.as_ref())
                } else {
                    solve_disjoint_paths(&inst.graph.graph, &inst.requests, rbd.as_ref())
                }
            })??;
            stats_fields(&mut r, width, &sol.stats);
            let code = yes_no(&mut r, sol.yes);
            r.witness = sol.witness.map(Witness::Paths);
            code
        }
        ProblemArg::ThreeCol => {
            let g = parse_instance(&text)?.graph.graph;
            r.set("problem", "3col");
            if let Some(cap) = c.cap {
                if g.n() > cap {
                    return Err(fail(3, format!("{} vertices exceed the cap of {cap}", g.n())));
                }
            }
            let timeout = c.timeout_ms.map(Duration::from_millis);
            let out = bounded(c, move || brute_3coloring(&g, timeout))??;
            match out {
                ColoringOutcome::Colorable(col) => {
                    r.witness = Some(Witness::Coloring(col));
                    yes_no(&mut r, true)
                }
                ColoringOutcome::NotColorable => yes_no(&mut r, false),
            }
        }
        ProblemArg::HittingSet => {
            let inst = HittingSetInstance::parse(&text)?;
            r.set("problem", "hitting-set");
            r.set("k", inst.k);
            r.set("m", inst.m());
            let cap = c.cap.unwrap_or(MAX_HITTING_SET_K);
            if inst.k > cap {
                return Err(fail(3, format!("k = {} exceeds the cap of {cap}", inst.k)));
            }
            match bounded(c, move || brute_hitting_set(&inst))?? {
                Some(sel) => {
                    r.witness = Some(Witness::Selection(sel));
                    yes_no(&mut r, true)
                }
                None => yes_no(&mut r, false),
            }
        }
    };
    eprintln!("elapsed_ms={}", started.elapsed().as_millis());
    r.emit(c)?;
    Ok(code)
}

fn load_embedding(g: &Graph, path: Option<&Path>) -> Out<RotationSystem> {
    let p = path.ok_or_else(|| fail(2, "this reduction needs a planar embedding (--embedding)"))?;
    let rs = parse_embedding(g, &read(p)?)?;
    if !euler_check(g, &rs)?.planar {
        return Err(fail(2, "precondition failed: input embedding is not planar"));
    }
    Ok(rs)
}

fn cmd_reduce(name: ReduceArg, c: &Common, embedding: Option<&Path>) -> Out<u8> {
    let text = input(c)?;
    let (label, out, checks): (&str, ReductionOutput, Vec<Check>) = match name {
        ReduceArg::ToPlanar => {
            let g = parse_instance(&text)?.graph.graph;
            let n = g.n();
            let out = reduce_3col_to_planar3col(&g)?;
            (
                "3col-to-planar3col",
                out,
                vec![Check::Planarity, Check::MaxDegree(5), Check::MaxVertices(65 * n * n), Check::Registry],
            )
        }
        ReduceArg::ToCyclePacking | ReduceArg::ToDisjointPaths => {
            let g = parse_instance(&text)?.graph.graph;
            let rs = load_embedding(&g, embedding)?;
            if matches!(name, ReduceArg::ToCyclePacking) {
                ("3col-to-cycle-packing", reduce_planar3col_to_cycle_packing(&g, &rs)?, vec![Check::Planarity, Check::Registry])
            } else {
                ("3col-to-disjoint-paths", reduce_planar3col_to_disjoint_paths(&g, &rs)?, vec![Check::Planarity, Check::Registry])
            }
        }
        ReduceArg::HsToMdp => {
            let inst = HittingSetInstance::parse(&text)?;
            let (k, m) = (inst.k, inst.m());
            let bag = (2 * (k.max(1) - 1) + 5 * k).saturating_sub(2).max(1);
            (
                "hs-to-mdp",
                reduce_hs_to_mdp(&inst)?,
                vec![Check::Planarity, Check::RequestCount(k + (k.max(1) - 1) * m), Check::PathDecomposition(bag), Check::Registry],
            )
        }
    };
    let report = validate_reduction(&out, &checks);
    let g = &out.instance.graph.graph;
    let mut r = Report::default();
    r.set("reduction", label);
    r.set("vertices", g.n());
    r.set("edges", g.m());
    r.set("max_degree", g.max_degree());
    r.set("requests", out.instance.requests.len());
    if let Some(l0) = out.l0 {
        r.set("l0", l0);
    }
    r.set("gadgets", out.registry.entries.len());
    r.set("registry_asks", out.registry.total_asks());
    for res in &report.results {
        r.set(&format!("check.{}", res.name), if res.ok { "ok".to_string() } else { format!("FAIL {}", res.detail) });
    }
    let mut graph_text = String::new();
    if let Some(l0) = out.l0 {
        writeln!(graph_text, "# l0 {l0}").unwrap();
    }
    graph_text.push_str(&write_instance(&out.instance));
    match &c.output {
        Some(prefix) => {
            write(&with_suffix(prefix, ".graph"), &graph_text)?;
            write(&with_suffix(prefix, ".emb"), &out.embedding.to_text())?;
            write(&with_suffix(prefix, ".registry.jsonl"), &out.registry.to_jsonl())?;
            write(&with_suffix(prefix, ".idmap"), &out.id_map_text())?;
            write(&with_suffix(prefix, ".names"), &out.names_text())?;
            if let Some(td) = &out.decomposition {
                write(&with_suffix(prefix, ".td"), &td.to_text())?;
            }
            print!("{}", r.render(c.format));
        }
        None => {
            print!("{graph_text}");
            eprint!("{}", r.render(c.format));
        }
    }
    if report.all_ok() {
        Ok(0)
    } else {
        Err(fail(2, format!("reduction failed validation:\n{}", report.to_text())))
    }
}

fn cmd_verify(problem: ProblemArg, c: &Common, witness: &Path) -> Out<u8> {
    let text = input(c)?;
    let wtext = read(witness)?;
    let kind = match problem {
        ProblemArg::CyclePacking => WitnessKind::CyclePacking,
        ProblemArg::Mdp => WitnessKind::MonoDisjointPaths,
        ProblemArg::DisjointPaths => WitnessKind::DisjointPaths,
        ProblemArg::ThreeCol => WitnessKind::ThreeColoring,
        ProblemArg::HittingSet => WitnessKind::HittingSet,
    };
    let w = Witness::parse(kind, &wtext)?;
    let res = match problem {
        ProblemArg::HittingSet => {
            let inst = HittingSetInstance::parse(&text)?;
            verify_witness(&Problem::HittingSet(&inst), &w)
        }
        _ => {
            let inst: Instance = parse_instance(&text)?;
            let p = match problem {
                ProblemArg::CyclePacking => Problem::CyclePacking { graph: &inst.graph.graph, l0: c.l0.unwrap_or(0) },
                ProblemArg::Mdp => Problem::MonoDisjointPaths(&inst),
                ProblemArg::DisjointPaths => Problem::DisjointPaths(&inst),
                _ => Problem::ThreeColoring(&inst.graph.graph),
            };
            verify_witness(&p, &w)
        }
    };
    let mut r = Report::default();
    let code = match res {
        Ok(()) => {
            r.set("result", "ok");
            0
        }
        Err(v) => {
            r.set("result", "violation");
            r.set("violation", v.kind.name());
            r.set("detail", v.detail);
            1
        }
    };
    r.emit(c)?;
    Ok(code)
}

fn cmd_decomp_build(c: &Common, kind: DecompKind, strategy: StrategyArg) -> Out<u8> {
    let g = parse_instance(&input(c)?)?.graph.graph;
    let (text, width) = match kind {
        DecompKind::Tree => {
            let td = min_fill_tree_decomposition(&g);
            (td.to_text(), td.width())
        }
        DecompKind::Branch => {
            let s = match strategy {
                StrategyArg::MinFill => BuildStrategy::FromTreeDecomposition,
                StrategyArg::Caterpillar => BuildStrategy::Caterpillar,
            };
            let bd = build_branch_decomposition(&g, s)?;
            let width = RootedBranchDecomposition::new(&g, &bd)?.width();
            (bd.to_text(), width)
        }
    };
    eprintln!("width={width}");
    match &c.output {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_decomp_validate(c: &Common, decomp: &Path, kind: DecompKind) -> Out<u8> {
    let g = parse_instance(&input(c)?)?.graph.graph;
    let text = read(decomp)?;
    let mut r = Report::default();
    let verdict = match kind {
        DecompKind::Tree => {
            let td = TreeDecomposition::parse(&text)?;
            validate_tree_decomposition(&g, &td).map_err(|v| v.to_string())
        }
        DecompKind::Branch => {
            let bd = BranchDecomposition::parse(&text)?;
            match bd.validate(&g) {
                Ok(()) => RootedBranchDecomposition::new(&g, &bd).map(|r| r.width()).map_err(|e| e.to_string()),
                Err(e) => Err(e.to_string()),
            }
        }
    };
    let code = match verdict {
        Ok(w) => {
            r.set("result", "valid");
            r.set("width", w);
            0
        }
        Err(e) => {
            r.set("result", "invalid");
            r.set("detail", e);
            1
        }
    };
    r.emit(c)?;
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(what: GenArg, c: &Common, rows: usize, cols: usize, n: usize, side: usize, p: f64, k: usize, m: usize) -> Out<u8> {
    let mut r = rng(c.seed);
    if !(0.0..=1.0).contains(&p) {
        return Err(fail(2, "--p must lie in [0, 1]"));
    }
    let (graph_text, emb) = match what {
        GenArg::Hs => {
            let text = random_hitting_set(&mut r, k, m, p).to_text();
            match &c.output {
                Some(prefix) => write(&with_suffix(prefix, ".hs"), &text)?,
                None => print!("{text}"),
            }
            return Ok(0);
        }
        GenArg::Grid => {
            let (g, rs) = grid_embedding(rows, cols)?;
            (write_instance(&Instance { graph: bwdp::ColoredGraph::uncolored(g.clone()), requests: Default::default() }), (g, rs))
        }
        GenArg::Planar => {
            if n > side * side {
                return Err(fail(2, format!("{n} vertices do not fit a {side} x {side} grid")));
            }
            let s = random_planar(&mut r, n, side, p);
            let text = write_instance(&Instance { graph: bwdp::ColoredGraph::uncolored(s.graph.clone()), requests: Default::default() });
            (text, (s.graph, s.rotation))
        }
    };
    let (g, rs) = emb;
    if !euler_check(&g, &rs)?.planar {
        return Err(fail(2, "generated embedding failed the Euler check"));
    }
    match &c.output {
        Some(prefix) => {
            write(&with_suffix(prefix, ".graph"), &graph_text)?;
            write(&with_suffix(prefix, ".emb"), &rs.to_text())?;
        }
        None => print!("{graph_text}{}", rs.to_text()),
    }
    Ok(0)
}

fn run(cli: Cli) -> Out<u8> {
    match cli.cmd {
        Cmd::Solve { problem, c, embedding, decomp } => cmd_solve(problem, &c, embedding.as_deref(), decomp.as_deref()),
        Cmd::Reduce { name, c, embedding } => cmd_reduce(name, &c, embedding.as_deref()),
        Cmd::Verify { problem, c, witness } => cmd_verify(problem, &c, &witness),
        Cmd::DecompBuild { c, kind, strategy } => cmd_decomp_build(&c, kind, strategy),
        Cmd::DecompValidate { c, decomp, kind } => cmd_decomp_validate(&c, &decomp, kind),
        Cmd::Gen { what, c, rows, cols, n, side, p, k, m } => cmd_gen(what, &c, rows, cols, n, side, p, k, m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
