//! `ceop`: generate instances, discretize them into Steiner Zones, solve the
//! SOP / CEOP / TDDP variants, cross-check against the exact oracle and run
//! seeded benchmark batches.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ceop_core::acs::solve_sop;
use ceop_core::bench::{run_batch, summary_csv};
use ceop_core::generate::{generate, GenerateSpec};
use ceop_core::instance::{Instance, ProblemKind, TddpParams};
use ceop_core::oracle::{brute_force_sop, OracleError, OracleProblem};
use ceop_core::pipeline::{solve, Mode, SolveError, SolverConfig};
use ceop_core::routing::RoutingGraph;
use ceop_core::rszd::{rszd, RszdParams};
use ceop_core::svg;

const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TRUNCATED: u8 = 3;

#[derive(Parser)]
#[command(name = "ceop", version, about = "Close-enough orienteering solvers built on Steiner Zone discretization")]
struct Cli {
    /// Worker threads for parallel stages (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate(GenerateArgs),
    /// Build a Steiner Zone layout for an instance.
    Discretize(DiscretizeArgs),
    /// Solve an instance.
    Solve(SolveArgs),
    /// Exact optimum of the discretized instance (at most 8 zones).
    Oracle(OracleArgs),
    /// Seeded batch runs with mean/SD summary.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ceop,
    Tddp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sop,
    Ceop,
    Tddp,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Sop => Mode::Sop,
            ModeArg::Ceop => Mode::Ceop,
            ModeArg::Tddp => Mode::Tddp,
        }
    }
}

#[derive(Args)]
struct SeedArg {
    /// Random seed.
    #[arg(long, env = "CRASZE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "overlap_ratio")]
    radius: Option<f64>,
    /// Radius as a fraction of the extent.
    #[arg(long)]
    overlap_ratio: Option<f64>,
    /// Side of the square holding the circle centers.
    #[arg(long, default_value_t = 100.0)]
    extent: f64,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [1.0, 12.0])]
    prize_range: Vec<f64>,
    #[arg(long, value_enum, default_value_t = KindArg::Ceop)]
    kind: KindArg,
    /// Budget as a multiple of the reference tour length.
    #[arg(long, default_value_t = 0.9)]
    budget_level: f64,
    #[arg(long, default_value_t = 5)]
    n_drones: usize,
    #[arg(long, default_value = "generated")]
    name: String,
    #[command(flatten)]
    seed: SeedArg,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Replace the budget by BESTKNOWN times this level.
    #[arg(long, conflicts_with = "budget")]
    budget_level: Option<f64>,
    /// Replace the budget outright.
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Args)]
struct DiscretizeArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 10)]
    iters: usize,
    #[arg(long)]
    max_degree: Option<usize>,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    rszd_iters: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    ants: Option<usize>,
    #[arg(long)]
    acs_iters: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    q0: Option<f64>,
    #[arg(long)]
    acs_max_no_impr: Option<usize>,
    #[arg(long)]
    refine_rounds: Option<usize>,
    #[arg(long)]
    particles: Option<usize>,
    #[arg(long)]
    pso_iters: Option<usize>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    #[arg(long)]
    pso_max_no_impr: Option<usize>,
    #[arg(long)]
    iacs_max_no_impr: Option<usize>,
    /// Wall-clock cap for the swarm, in seconds.
    #[arg(long)]
    time_cap: Option<f64>,
}

impl ParamArgs {
    fn config(&self) -> SolverConfig {
        let mut c = SolverConfig::default();
        macro_rules! set {
            ($field:expr, $opt:expr) => {
                if let Some(v) = $opt {
                    $field = v;
                }
            };
        }
        set!(c.rszd.n_iter, self.rszd_iters);
        set!(c.rszd.max_degree, self.max_degree);
        set!(c.acs.n_ants, self.ants);
        set!(c.acs.n_iter, self.acs_iters);
        set!(c.acs.beta, self.beta);
        set!(c.acs.alpha, self.alpha);
        set!(c.acs.rho, self.rho);
        set!(c.acs.q0, self.q0);
        set!(c.acs.max_no_impr, self.acs_max_no_impr);
        set!(c.refine_rounds, self.refine_rounds);
        set!(c.pso.n_particles, self.particles);
        set!(c.pso.n_iter, self.pso_iters);
        set!(c.pso.c1, self.c1);
        set!(c.pso.c2, self.c2);
        set!(c.pso.max_no_impr, self.pso_max_no_impr);
        set!(c.pso.iacs_max_no_impr, self.iacs_max_no_impr);
        set!(c.pso.time_cap_s, self.time_cap);
        c
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Ceop)]
    mode: ModeArg,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Solution JSON (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, default_value_t = 10)]
    rszd_iters: usize,
    /// Also run the ant colony and report both prizes.
    #[arg(long)]
    compare: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, required = true, num_args = 1..)]
    instance: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Ceop)]
    mode: ModeArg,
    /// Number of seeds; runs use seeds base, base+1, ...
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Summary CSV (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-run records as CSV.
    #[arg(long)]
    records: Option<PathBuf>,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn invalid(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_INVALID, error: error.into() }
    }
    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_USAGE, error: error.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: EXIT_USAGE, error }
    }
}

type CmdResult = Result<u8, Failure>;

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path, budget: Option<&BudgetArgs>) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::usage)?;
    let mut inst = Instance::parse(&text)
        .with_context(|| format!("{} failed validation", path.display()))
        .map_err(Failure::invalid)?;
    if let Some(b) = budget {
        if let Some(level) = b.budget_level {
            inst.budget = inst.budget_for_level(level).map_err(Failure::invalid)?;
        }
        if let Some(v) = b.budget {
            inst.budget = v;
        }
        inst.validate().with_context(|| format!("{} failed validation", path.display())).map_err(Failure::invalid)?;
    }
    Ok(inst)
}

fn cmd_generate(a: &GenerateArgs) -> CmdResult {
    if a.radius.is_none() && a.overlap_ratio.is_none() {
        return Err(Failure::usage(anyhow!("one of --radius or --overlap-ratio is required")));
    }
    let spec = GenerateSpec {
        name: a.name.clone(),
        n: a.n,
        radius: a.radius,
        overlap_ratio: a.overlap_ratio,
        extent: a.extent,
        prize_range: (a.prize_range[0], a.prize_range[1]),
        kind: match a.kind {
            KindArg::Ceop => ProblemKind::Ceop,
            KindArg::Tddp => ProblemKind::Tddp,
        },
        budget_level: a.budget_level,
        tddp: TddpParams { n_drones: a.n_drones, ..TddpParams::default() },
        seed: a.seed.seed,
    };
    let inst = generate(&spec).context("invalid generator flags").map_err(Failure::usage)?;
    write_output(a.out.as_deref(), &inst.to_text())?;
    Ok(0)
}

fn cmd_discretize(a: &DiscretizeArgs) -> CmdResult {
    let inst = load_instance(&a.instance, None)?;
    let mut params = RszdParams { n_iter: a.iters, ..RszdParams::default() };
    if let Some(d) = a.max_degree {
        params.max_degree = d;
    }
    if params.n_iter == 0 || params.max_degree == 0 {
        return Err(Failure::usage(anyhow!("--iters and --max-degree must be at least 1")));
    }
    let layout = rszd(&inst, &params, a.seed.seed);
    let mut json = layout.to_json();
    json.push('\n');
    write_output(a.out.as_deref(), &json)?;
    if let Some(p) = &a.svg {
        fs::write(p, svg::render(&inst, Some(&layout), None)).with_context(|| format!("writing {}", p.display()))?;
    }
    eprintln!("{} circles -> {} zones", inst.circles.len(), layout.zones.len());
    Ok(0)
}

fn cmd_solve(a: &SolveArgs) -> CmdResult {
    let inst = load_instance(&a.instance, Some(&a.budget))?;
    let cfg = a.params.config();
    let out = solve(&inst, a.mode.into(), &cfg, a.seed.seed).map_err(|e| match e {
        SolveError::NotTddp => Failure::usage(e),
        other => Failure::invalid(other),
    })?;
    let sol = &out.solution;
    println!("prize {}", sol.prize);
    println!("cost {}", sol.cost);
    println!("budget {}", sol.budget);
    println!("runtime_s {:.3}", sol.runtime_s);
    let mut json = sol.to_json();
    json.push('\n');
    match &a.out {
        Some(p) => fs::write(p, json).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{json}"),
    }
    if let Some(p) = &a.svg {
        fs::write(p, svg::render(&inst, Some(&out.layout), Some(sol))).with_context(|| format!("writing {}", p.display()))?;
    }
    if sol.truncated == Some(true) {
        eprintln!("time cap reached; returning the best solution found so far");
        return Ok(EXIT_TRUNCATED);
    }
    Ok(0)
}

fn cmd_oracle(a: &OracleArgs) -> CmdResult {
    let inst = load_instance(&a.instance, Some(&a.budget))?;
    let params = RszdParams { n_iter: a.rszd_iters.max(1), ..RszdParams::default() };
    let layout = rszd(&inst, &params, a.seed.seed);
    let g = RoutingGraph::sop_for_instance(&layout, &inst);
    let result = brute_force_sop(&OracleProblem::from_graph(&g)).map_err(|e: OracleError| Failure::usage(e))?;
    println!("zones {}", layout.zones.len());
    println!("optimal prize {}", result.prize);
    println!("optimal cost {}", result.cost);
    println!("nodes expanded {}", result.nodes_expanded);
    if a.compare {
        let best = solve_sop(&g, &SolverConfig::default().acs, a.seed.seed);
        println!("colony prize {}", best.prize);
        println!("colony cost {}", best.cost);
    }
    Ok(0)
}

fn cmd_bench(a: &BenchArgs, jobs: usize) -> CmdResult {
    let instances = a.instance.iter().map(|p| load_instance(p, Some(&a.budget))).collect::<Result<Vec<_>, _>>()?;
    let seeds: Vec<u64> = (0..a.seeds).map(|k| a.seed.seed + k).collect();
    let jobs = if jobs == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { jobs };
    let batch = run_batch(&instances, a.mode.into(), &a.params.config(), &seeds, jobs);
    let csv = summary_csv(&batch.summary).context("formatting summary")?;
    write_output(a.out.as_deref(), &csv)?;
    if let Some(p) = &a.records {
        let mut text = String::from("instance,algorithm,seed,budget,prize,cost,runtime_s,error\n");
        for r in &batch.records {
            text.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.instance,
                r.algorithm,
                r.seed,
                r.budget,
                r.prize,
                r.cost,
                r.runtime_s,
                r.error.as_deref().unwrap_or("")
            ));
        }
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    let failed = batch.records.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        eprintln!("{failed} runs failed");
        return Ok(EXIT_INVALID);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Discretize(a) => cmd_discretize(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bench(a) => cmd_bench(a, cli.jobs),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
