//! Command-line front end.
//!
//! Every subcommand reads its parameters from flags and, when `--config` is
//! given, from the TOML section named after the subcommand. Flags win over the
//! file. Results go to standard output as JSON (or CSV for sweeps); progress
//! and errors go to standard error. Exit status is 0 on success, 2 for bad
//! input or usage and 1 for internal failures.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jigsaw_core::generators::cycle_puzzle;
use jigsaw_core::theory::{
    find_cut_certificate, lower_bound_pc_ring, ring_lower_objective, ring_objective_grid_max,
    upper_bound_pc,
};
use jigsaw_core::{JigsawInstance, MergeRule, Seed};
use serde::Deserialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::experiments::{linspace, Coupling, Harness, PcStrategy};
use crate::io::{write_edge_list, GraphSpec};
use crate::report::{write_csv, write_jsonl, SweepMeta};

#[derive(Debug, Parser)]
#[command(name = "jigsaw", version, about = "Jigsaw percolation simulator")]
pub struct Cli {
    /// TOML file with one section per subcommand, e.g. `[sweep]`.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Worker threads for Monte Carlo trials (0 = all cores). Never changes
    /// results.
    #[arg(long, global = true, env = "JIGSAW_WORKERS")]
    pub workers: Option<usize>,
    /// Suppress progress output.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph as an edge list.
    Gen(GenArgs),
    /// Run the dynamics once on a puzzle and a people graph.
    Run(RunArgs),
    /// Solve fractions over an equally spaced grid of edge probabilities.
    Sweep(SweepArgs),
    /// Estimate the edge probability at which the solve fraction crosses 1/2.
    EstimatePc(EstimatePcArgs),
    /// Critical-value bounds for ring puzzles.
    Bounds(BoundsArgs),
    /// Search for an interval cut certificate that a ring puzzle is unsolvable.
    Certify(CertifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Cycle,
    Path,
    Star,
    Complete,
    Torus,
    Tree,
    Er,
    Powerlaw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Std,
    Ae,
}

impl Rule {
    fn merge_rule(self) -> MergeRule {
        match self {
            Rule::Std => MergeRule::Standard,
            Rule::Ae => MergeRule::AdjacentEdge,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Rule::Std => "std",
            Rule::Ae => "ae",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Sync,
    Contraction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingArg {
    Shared,
    Independent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Grid,
    Bisect,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenArgs {
    pub kind: Option<GenKind>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability (er).
    #[arg(long)]
    pub p: Option<f64>,
    /// Degree exponent (powerlaw).
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Torus rows; with `--cols`, replaces `--n`.
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Maximum degree (tree, default 3).
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Edge-list file; without it the edge list goes to standard output and
    /// the summary to standard error.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunArgs {
    /// Puzzle graph: generator string such as `cycle:1000`, or an edge-list file.
    #[arg(long)]
    pub puzzle: Option<GraphSpec>,
    /// People graph: generator string such as `er:1000:0.1:7`, or an edge-list file.
    #[arg(long)]
    pub people: Option<GraphSpec>,
    #[arg(long, value_enum)]
    pub rule: Option<Rule>,
    #[arg(long, value_enum)]
    pub engine: Option<Engine>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepArgs {
    #[arg(long)]
    pub puzzle: Option<GraphSpec>,
    /// Smallest grid value (default 0).
    #[arg(long)]
    pub min: Option<f64>,
    /// Largest grid value (default 1.05 π²/(6 ln n), capped at 1).
    #[arg(long)]
    pub max: Option<f64>,
    /// Number of grid points (default 21).
    #[arg(long)]
    pub points: Option<usize>,
    /// Trials per grid point (default 200).
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub rule: Option<Rule>,
    #[arg(long, value_enum)]
    pub coupling: Option<CouplingArg>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (default standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimatePcArgs {
    #[arg(long)]
    pub puzzle: Option<GraphSpec>,
    /// Trials per evaluated point (default 200).
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, value_enum)]
    pub strategy: Option<Strategy>,
    /// Grid points (grid strategy, default 21).
    #[arg(long)]
    pub points: Option<usize>,
    /// Grid top (grid strategy, default 1.05 π²/(6 ln n), capped at 1).
    #[arg(long)]
    pub p_max: Option<f64>,
    /// Final bracket width (bisect strategy, default 1e-4).
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Step limit (bisect strategy, default 40).
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub rule: Option<Rule>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: Option<u64>,
    /// Spacing of the t grid for the ring objective (default 1e-4).
    #[arg(long)]
    pub t_step: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CertifyArgs {
    #[arg(long)]
    pub people: Option<GraphSpec>,
    /// Ring size (default: the people graph's vertex count).
    #[arg(long)]
    pub n: Option<usize>,
    /// Interval width.
    #[arg(long)]
    pub x: Option<usize>,
}

impl<'de> Deserialize<'de> for GraphSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `a.field.or(b.field)` for every listed field.
macro_rules! merge_fields {
    ($ty:ident { $($f:ident),* $(,)? }) => {
        impl $ty {
            fn merged(self, file: Option<$ty>) -> $ty {
                let file = file.unwrap_or_default();
                $ty { $($f: self.$f.or(file.$f)),* }
            }
        }
    };
}

merge_fields!(GenArgs { kind, n, p, gamma, rows, cols, max_degree, seed, out });
merge_fields!(RunArgs { puzzle, people, rule, engine });
merge_fields!(SweepArgs { puzzle, min, max, points, trials, seed, rule, coupling, format, out });
merge_fields!(EstimatePcArgs { puzzle, trials, strategy, points, p_max, tolerance, max_steps, seed, rule });
merge_fields!(BoundsArgs { n, t_step });
merge_fields!(CertifyArgs { people, n, x });

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    workers: Option<usize>,
    gen: Option<GenArgs>,
    run: Option<RunArgs>,
    sweep: Option<SweepArgs>,
    #[serde(rename = "estimate-pc", alias = "estimate_pc")]
    estimate_pc: Option<EstimatePcArgs>,
    bounds: Option<BoundsArgs>,
    certify: Option<CertifyArgs>,
}

fn load_config(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::Config(format!("missing required parameter --{flag}")))
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).map_err(|e| Error::Output(e.to_string()))
}

/// Default grid top for a puzzle on `n` vertices.
fn default_top(n: usize) -> Result<f64> {
    Ok((1.05 * upper_bound_pc(n.max(2) as u64)?).min(1.0))
}

struct Context {
    workers: usize,
    quiet: bool,
}

impl Context {
    fn harness(&self, label: &'static str) -> Result<Harness> {
        let harness = Harness::new(self.workers)?;
        if self.quiet {
            return Ok(harness);
        }
        let last = Arc::new(AtomicUsize::new(0));
        let tty = std::io::stderr().is_terminal();
        Ok(harness.with_progress(move |done, total| {
            // about 20 updates per batch
            let step = (total / 20).max(1);
            if done % step == 0 || done == total {
                let prev = last.swap(done, Ordering::Relaxed);
                if prev != done {
                    let end = if tty && done < total { "\r" } else { "\n" };
                    eprint!("{label}: {done}/{total} trials{end}");
                }
            }
        }))
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let kind = need(args.kind, "kind (positional)")?;
    let seed = args.seed.unwrap_or(0);
    let spec = match kind {
        GenKind::Cycle => GraphSpec::Cycle(need(args.n, "n")?),
        GenKind::Path => GraphSpec::Path(need(args.n, "n")?),
        GenKind::Star => GraphSpec::Star(need(args.n, "n")?),
        GenKind::Complete => GraphSpec::Complete(need(args.n, "n")?),
        GenKind::Torus => match (args.rows, args.cols, args.n) {
            (Some(r), Some(c), _) => GraphSpec::Torus(r, c),
            (None, None, Some(n)) => {
                let side = (n as f64).sqrt().round() as usize;
                if side * side != n {
                    return Err(Error::Config(format!("torus --n {n} is not a perfect square; use --rows and --cols")));
                }
                GraphSpec::Torus(side, side)
            }
            _ => return Err(Error::Config("torus needs --rows and --cols, or a square --n".into())),
        },
        GenKind::Tree => GraphSpec::Tree {
            n: need(args.n, "n")?,
            max_deg: args.max_degree.unwrap_or(3),
            seed,
        },
        GenKind::Er => GraphSpec::ErdosRenyi {
            n: need(args.n, "n")?,
            p: need(args.p, "p")?,
            seed,
        },
        GenKind::Powerlaw => GraphSpec::PowerLaw {
            n: need(args.n, "n")?,
            gamma: need(args.gamma, "gamma")?,
            seed,
        },
    };
    let graph = spec.build()?;
    let summary = json!({
        "spec": spec.to_string(),
        "n": graph.vertex_count(),
        "m": graph.edge_count(),
        "max_degree": graph.max_degree(),
        "seed": seed,
        "out": args.out.as_ref().map(|p| p.display().to_string()),
    });
    match &args.out {
        Some(path) => {
            crate::io::save_graph(&graph, path)?;
            print_json(&summary)
        }
        None => {
            write_edge_list(&graph, std::io::stdout().lock()).map_err(|e| Error::Output(e.to_string()))?;
            eprintln!("{summary}");
            Ok(())
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let puzzle_spec = need(args.puzzle, "puzzle")?;
    let people_spec = need(args.people, "people")?;
    let rule = args.rule.unwrap_or(Rule::Std);
    let engine = args.engine.unwrap_or(Engine::Sync);
    let puzzle = puzzle_spec.build_puzzle()?;
    let people = people_spec.build()?;
    let inst = JigsawInstance::new(people, puzzle)?;
    let out = match engine {
        Engine::Sync => inst.run(rule.merge_rule()),
        Engine::Contraction => inst.run_contraction(rule.merge_rule()),
    };
    let histogram: BTreeMap<String, usize> = out
        .histogram
        .iter()
        .map(|(size, count)| (size.to_string(), *count))
        .collect();
    print_json(&json!({
        "solved": out.solved,
        "rounds": out.rounds,
        "clusters": out.final_cluster_count,
        "largest": out.largest_cluster,
        "histogram": histogram,
        "params": {
            "puzzle": puzzle_spec.to_string(),
            "people": people_spec.to_string(),
            "rule": rule.name(),
            "engine": match engine { Engine::Sync => "sync", Engine::Contraction => "contraction" },
        },
    }))
}

fn cmd_sweep(args: SweepArgs, ctx: &Context) -> Result<()> {
    let puzzle_spec = need(args.puzzle, "puzzle")?;
    let puzzle = puzzle_spec.build_puzzle()?;
    let min = args.min.unwrap_or(0.0);
    let max = match args.max {
        Some(m) => m,
        None => default_top(puzzle.vertex_count())?,
    };
    let points = args.points.unwrap_or(21);
    let trials = args.trials.unwrap_or(200);
    let seed = args.seed.unwrap_or(0);
    let rule = args.rule.unwrap_or(Rule::Std);
    let coupling = match args.coupling.unwrap_or(CouplingArg::Shared) {
        CouplingArg::Shared => Coupling::Shared,
        CouplingArg::Independent => Coupling::Independent,
    };
    if points == 0 || min > max {
        return Err(Error::Config(format!("bad grid: {points} points on [{min}, {max}]")));
    }
    let grid = linspace(min, max, points);
    let harness = ctx.harness("sweep")?;
    let swept = harness.sweep(&puzzle, &grid, trials, Seed::new(seed, 0), rule.merge_rule(), coupling)?;
    let write = |out: &mut dyn Write| -> Result<()> {
        match args.format.unwrap_or(Format::Csv) {
            Format::Csv => write_csv(&swept, out),
            Format::Jsonl => {
                let meta = SweepMeta {
                    seed,
                    generator: "er".into(),
                    puzzle: puzzle_spec.to_string(),
                    rule: rule.name().into(),
                    coupling: match coupling {
                        Coupling::Shared => "shared",
                        Coupling::Independent => "independent",
                    }
                    .into(),
                };
                write_jsonl(&swept, &meta, out)
            }
        }
    };
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            write(&mut std::io::BufWriter::new(file))
        }
        None => write(&mut std::io::stdout().lock()),
    }
}

fn cmd_estimate_pc(args: EstimatePcArgs, ctx: &Context) -> Result<()> {
    let puzzle_spec = need(args.puzzle, "puzzle")?;
    let puzzle = puzzle_spec.build_puzzle()?;
    let trials = args.trials.unwrap_or(200);
    let seed = args.seed.unwrap_or(0);
    let rule = args.rule.unwrap_or(Rule::Std);
    let strategy = match args.strategy.unwrap_or(Strategy::Grid) {
        Strategy::Grid => PcStrategy::Grid {
            points: args.points.unwrap_or(21),
            p_max: match args.p_max {
                Some(p) => p,
                None => default_top(puzzle.vertex_count())?,
            },
        },
        Strategy::Bisect => PcStrategy::Bisect {
            tolerance: args.tolerance.unwrap_or(1e-4),
            max_steps: args.max_steps.unwrap_or(40),
        },
    };
    let est = ctx
        .harness("estimate-pc")?
        .estimate_pc(&puzzle, trials, strategy, Seed::new(seed, 0), rule.merge_rule())?;
    let mut value = serde_json::to_value(&est)?;
    value["params"] = json!({
        "puzzle": puzzle_spec.to_string(),
        "trials": trials,
        "seed": seed,
        "rule": rule.name(),
        "strategy": match strategy {
            PcStrategy::Grid { points, p_max } => json!({"grid": {"points": points, "p_max": p_max}}),
            PcStrategy::Bisect { tolerance, max_steps } =>
                json!({"bisect": {"tolerance": tolerance, "max_steps": max_steps}}),
        },
    });
    print_json(&value)
}

fn cmd_bounds(args: BoundsArgs) -> Result<()> {
    let n = need(args.n, "n")?;
    let t_step = args.t_step.unwrap_or(1e-4);
    let (argmax, max) = ring_objective_grid_max(t_step)?;
    print_json(&json!({
        "n": n,
        "upper": upper_bound_pc(n)?,
        "lower_ring": lower_bound_pc_ring(n)?,
        "objective_max_over_grid": max,
        "objective_argmax": argmax,
        "objective_at_0_07": ring_lower_objective(0.07)?,
        "one_over_27": 1.0 / 27.0,
        "params": {"n": n, "t_step": t_step},
    }))
}

fn cmd_certify(args: CertifyArgs) -> Result<()> {
    let people_spec = need(args.people, "people")?;
    let x = need(args.x, "x")?;
    let people = people_spec.build()?;
    let n = args.n.unwrap_or(people.vertex_count());
    let cert = find_cut_certificate(&people, n, x)?;
    // cross-check against the dynamics on the ring
    let ring_solved = JigsawInstance::new(people, cycle_puzzle(n)?)?
        .run(MergeRule::Standard)
        .solved;
    print_json(&json!({
        "certified_unsolvable": cert.is_some(),
        "witnesses": cert.as_ref().map(|c| c.witnesses.clone()).unwrap_or_default(),
        "boundaries": cert.as_ref().map(|c| c.boundaries.clone()),
        "ring_solved": ring_solved,
        "params": {"people": people_spec.to_string(), "n": n, "x": x},
    }))
}

fn execute(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    let ctx = Context {
        workers: cli.workers.or(config.workers).unwrap_or(0),
        quiet: cli.quiet,
    };
    match cli.command {
        Command::Gen(a) => cmd_gen(a.merged(config.gen)),
        Command::Run(a) => cmd_run(a.merged(config.run)),
        Command::Sweep(a) => cmd_sweep(a.merged(config.sweep), &ctx),
        Command::EstimatePc(a) => cmd_estimate_pc(a.merged(config.estimate_pc), &ctx),
        Command::Bounds(a) => cmd_bounds(a.merged(config.bounds)),
        Command::Certify(a) => cmd_certify(a.merged(config.certify)),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
