use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gauntlet_core::generate::{clr_set_cover, random_knapsack, random_matrix_tsp, rb_graph, KnapsackClass, RbParams};
use gauntlet_core::instances::{overcost, ProblemInstance, ProblemKind, Rounding};
use gauntlet_core::io::{self, read_optimum, write_dimacs, write_instance, write_knapsack, write_orlib_scp, IoError};
use gauntlet_core::lab::{
    self, default_multiples, mann_whitney_u_with, render_profile, render_report, render_summary, run_experiment,
    time_profile, Alternative, ComparisonReport, ExperimentSpec, Format, LabError, PMethod, Threads,
};
use gauntlet_core::{run_ga, solve_adhoc, GaConfig, InstanceFile};

const THREADS_VAR: &str = "APPROX_GAUNTLET_THREADS";

#[derive(Parser)]
#[command(name = "gauntlet", version, about = "Genetic algorithms against greedy heuristics across approximation classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance with one method.
    Solve(SolveArgs),
    /// Run experiment specs and print comparison tables.
    Experiment(ExperimentArgs),
    /// Sample GA quality at multiples of the ad-hoc runtime.
    Profile(ProfileArgs),
    /// Statistical tests on sample files.
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Random symmetric distance-matrix TSP instance.
    GenMatrix(GenMatrixArgs),
    /// Model RB graph with a planted independent set (frb family).
    GenFrb(GenFrbArgs),
    /// Set covering instance on the 2-colourings of a point set.
    GenClr(GenClrArgs),
    /// Random knapsack instance from a standard correlation class.
    GenKnapsack(GenKnapsackArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMethod {
    Adhoc,
    Ga,
    GaSeeded,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveFormat {
    Human,
    Csv,
}

#[derive(Args)]
struct SolveArgs {
    /// knapsack, tsp, mvc, msc, mis or matrix-tsp.
    #[arg(long)]
    problem: String,
    #[arg(long, value_enum)]
    method: SolveMethod,
    #[arg(long)]
    instance: PathBuf,
    /// Known optimum; overrides any `.opt` sidecar.
    #[arg(long)]
    optimum: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    pop: usize,
    #[arg(long, default_value_t = 500)]
    gens: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 0.9)]
    pc: f64,
    /// Mutation rate; defaults to 1/L per bit or 0.1 per tour.
    #[arg(long)]
    pm: Option<f64>,
    /// Use unrounded Euclidean distances instead of TSPLIB nearest-integer.
    #[arg(long)]
    real_distances: bool,
    #[arg(long, value_enum, default_value_t = SolveFormat::Human)]
    format: SolveFormat,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment spec file; repeat to run several.
    #[arg(long, required = true)]
    spec: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv, md or plot-data.
    #[arg(long, default_value = "md")]
    format: String,
    /// Append the per-class winner table.
    #[arg(long)]
    summary: bool,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Comma-separated multiples of the ad-hoc runtime (default 1,250,500,...,30000).
    #[arg(long, value_delimiter = ',')]
    multiples: Option<Vec<u32>>,
    /// Ad-hoc runs averaged to measure its runtime.
    #[arg(long, default_value_t = 100)]
    loops: usize,
    /// plot-data, csv or md.
    #[arg(long, default_value = "plot-data")]
    format: String,
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Mann-Whitney U test.
    Mwu(MwuArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AltArg {
    TwoSided,
    Less,
    Greater,
}

#[derive(Clone, Copy, ValueEnum)]
enum PArg {
    Auto,
    Exact,
    Normal,
}

#[derive(Args)]
struct MwuArgs {
    /// One number per line.
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, value_enum, default_value_t = AltArg::TwoSided)]
    alternative: AltArg,
    #[arg(long, value_enum, default_value_t = PArg::Auto)]
    method: PArg,
}

#[derive(Args)]
struct GenMatrixArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    max: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenFrbArgs {
    #[arg(long, default_value_t = 30)]
    variables: usize,
    #[arg(long, default_value_t = 15)]
    domain: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also writes `<out>.mis.opt` and `<out>.mvc.opt`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenClrArgs {
    #[arg(long, default_value_t = 10)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenKnapsackArgs {
    #[arg(long)]
    n: usize,
    /// uncorrelated, weakly, strongly or subset-sum.
    #[arg(long, default_value = "weakly")]
    class: String,
    #[arg(long, default_value_t = 1000)]
    range: u64,
    /// Capacity as a fraction of the total weight.
    #[arg(long, default_value_t = 0.5)]
    capacity_ratio: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with its exit code and diagnostic tag.
struct Failure {
    code: u8,
    tag: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, tag: "usage", message: message.into() }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 2, tag: "invalid", message: message.into() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let tag = match e {
            IoError::Parse { .. } | IoError::Unsupported(_) | IoError::Optimum(_) => "parse",
            IoError::Io { .. } => "io",
            _ => "invalid",
        };
        Failure { code: 2, tag, message: e.to_string() }
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Io(io) => io.into(),
            LabError::Spec { .. } => Failure { code: 2, tag: "parse", message: e.to_string() },
            other => Failure::invalid(other.to_string()),
        }
    }
}

macro_rules! impl_invalid {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::invalid(e.to_string())
            }
        }
    )*};
}
impl_invalid!(gauntlet_core::GaError, gauntlet_core::InstanceError, lab::StatsError);

type Outcome = Result<String, Failure>;

fn threads() -> Result<Threads, Failure> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Threads)
            .map_err(|_| Failure::usage(format!("{THREADS_VAR} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(Threads(std::thread::available_parallelism().map_or(1, |n| n.get()))),
    }
}

fn parse_kind(s: &str) -> Result<ProblemKind, Failure> {
    s.parse().map_err(|e: gauntlet_core::InstanceError| Failure::usage(e.to_string()))
}

fn parse_format(s: &str) -> Result<Format, Failure> {
    s.parse().map_err(|e: LabError| Failure::usage(e.to_string()))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|source| IoError::Io { path: path.to_path_buf(), source }.into())
}

/// Writes to `out` (returning a short note) or returns the text for stdout.
fn emit(out: &Option<PathBuf>, text: String) -> Outcome {
    match out {
        Some(p) => {
            write_file(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn load_for_solve(args: &SolveArgs, kind: ProblemKind) -> Result<InstanceFile, Failure> {
    let mut file = io::load_instance(&args.instance, kind, args.optimum)?;
    if args.real_distances {
        if kind != ProblemKind::EuclideanTsp {
            return Err(Failure::usage("--real-distances applies to --problem tsp only"));
        }
        let text = fs::read_to_string(&args.instance)
            .map_err(|source| IoError::Io { path: args.instance.clone(), source })?;
        file.instance = io::parse_tsplib_with(&text, Rounding::Exact)?.into_problem();
        file.optimum = read_optimum(&args.instance, kind, args.optimum)?;
    }
    Ok(file)
}

fn solve(args: SolveArgs) -> Outcome {
    let kind = parse_kind(&args.problem)?;
    let cfg = GaConfig {
        population_size: args.pop,
        generations: args.gens,
        tournament_size: args.k,
        crossover_rate: args.pc,
        mutation_rate: args.pm,
        rng_seed: args.seed,
        seeded: matches!(args.method, SolveMethod::GaSeeded),
    };
    cfg.validate()?;
    let file = load_for_solve(&args, kind)?;
    let inst: &ProblemInstance = &file.instance;
    let solution = match args.method {
        SolveMethod::Adhoc => solve_adhoc(inst),
        SolveMethod::Ga | SolveMethod::GaSeeded => run_ga(inst, &cfg, &[])?.best_solution,
    };
    debug_assert!(inst.is_feasible(&solution).unwrap_or(false));
    let objective = inst.objective(&solution)?;
    let over = file.optimum.map(|o| overcost(objective, o, inst.sense())).transpose()?;
    let method = match args.method {
        SolveMethod::Adhoc => "adhoc",
        SolveMethod::Ga => "ga",
        SolveMethod::GaSeeded => "ga-seeded",
    };
    let mut out = String::new();
    match args.format {
        SolveFormat::Human => {
            writeln!(out, "instance: {}", file.name).unwrap();
            writeln!(out, "method: {method}").unwrap();
            writeln!(out, "objective: {objective}").unwrap();
            if let Some(o) = over {
                writeln!(out, "overcost: {o:.2}%").unwrap();
            }
            writeln!(out, "solution: {solution}").unwrap();
        }
        SolveFormat::Csv => {
            writeln!(out, "instance,problem,method,objective,overcost,solution").unwrap();
            let o = over.map(|o| format!("{o:.6}")).unwrap_or_default();
            writeln!(out, "{},{},{method},{objective},{o},{solution}", file.name, kind.id()).unwrap();
        }
    }
    Ok(out)
}

fn experiment(args: ExperimentArgs) -> Outcome {
    let format = parse_format(&args.format)?;
    let threads = threads()?;
    let mut reports: Vec<ComparisonReport> = Vec::new();
    for path in &args.spec {
        let spec = ExperimentSpec::from_file(path)?;
        let report = run_experiment(&spec, threads)?;
        match reports.iter_mut().find(|r| r.problem == report.problem && r.metric() == report.metric()) {
            Some(existing) => existing.rows.extend(report.rows),
            None => reports.push(report),
        }
    }
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        let text = render_report(r, format)?;
        if format == Format::Csv && i > 0 {
            // One header for the whole file.
            out.push_str(text.split_once('\n').map_or("", |x| x.1));
        } else {
            if i > 0 && format == Format::Markdown {
                out.push('\n');
            }
            out.push_str(&text);
        }
    }
    if args.summary {
        if format != Format::Markdown {
            return Err(Failure::usage("--summary requires --format md"));
        }
        out.push('\n');
        out.push_str(&render_summary(&reports));
    }
    emit(&args.out, out)
}

fn profile(args: ProfileArgs) -> Outcome {
    let format = parse_format(&args.format)?;
    let spec = ExperimentSpec::from_file(&args.spec)?;
    let file = io::load_instance(&spec.instance, spec.problem, spec.optimum)?;
    let multiples = args.multiples.unwrap_or_else(default_multiples);
    let profile = time_profile(&spec, &file, &multiples, args.loops)?;
    Ok(render_profile(&profile, format)?)
}

fn read_sample(path: &Path) -> Result<Vec<f64>, Failure> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Io { path: path.to_path_buf(), source })?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| IoError::Parse {
            line: i + 1,
            message: format!("{}: expected a number, got `{line}`", path.display()),
        })?;
        values.push(v);
    }
    Ok(values)
}

fn mwu(args: MwuArgs) -> Outcome {
    let a = read_sample(&args.a)?;
    let b = read_sample(&args.b)?;
    let alt = match args.alternative {
        AltArg::TwoSided => Alternative::TwoSided,
        AltArg::Less => Alternative::Less,
        AltArg::Greater => Alternative::Greater,
    };
    let method = match args.method {
        PArg::Auto => PMethod::Auto,
        PArg::Exact => PMethod::Exact,
        PArg::Normal => PMethod::Normal,
    };
    let r = mann_whitney_u_with(&a, &b, alt, method)?;
    let used = if r.method == PMethod::Exact { "exact" } else { "normal" };
    Ok(format!("U = {}\nU_b = {}\np = {:.6}\nmethod = {used}\nn_a = {}\nn_b = {}\n", r.u_a, r.u_b, r.p_value, r.n_a, r.n_b))
}

fn gen_frb(args: GenFrbArgs) -> Outcome {
    let planted = rb_graph(RbParams::frb(args.variables, args.domain, args.seed))?;
    let text = write_dimacs(&planted.graph);
    if let Some(out) = &args.out {
        let mis = planted.hidden.len();
        let side = |ext: &str| {
            let mut s = out.clone().into_os_string();
            s.push(ext);
            PathBuf::from(s)
        };
        write_file(&side(".mis.opt"), &format!("{mis}\n"))?;
        write_file(&side(".mvc.opt"), &format!("{}\n", planted.graph.vertex_count() - mis))?;
    }
    emit(&args.out, text)
}

fn gen_knapsack(args: GenKnapsackArgs) -> Outcome {
    let class: KnapsackClass = args.class.parse().map_err(|e: gauntlet_core::InstanceError| Failure::usage(e.to_string()))?;
    let k = random_knapsack(args.n, class, args.range, args.capacity_ratio, args.seed)?;
    emit(&args.out, write_knapsack(&k))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Experiment(a) => experiment(a),
        Command::Profile(a) => profile(a),
        Command::Stats(StatsCommand::Mwu(a)) => mwu(a),
        Command::GenMatrix(a) => {
            let m = random_matrix_tsp(a.n, a.max, a.seed)?;
            let name = format!("rand{}-{}", a.n, a.seed);
            emit(&a.out, write_instance(&name, &ProblemInstance::MatrixTsp(m)))
        }
        Command::GenFrb(a) => gen_frb(a),
        Command::GenClr(a) => emit(&a.out, write_orlib_scp(&clr_set_cover(a.points)?)),
        Command::GenKnapsack(a) => gen_knapsack(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            // First paragraph only; clap appends usage and help hints.
            let text = e.to_string();
            let lead: Vec<&str> = text.lines().take_while(|l| !l.trim().is_empty()).map(str::trim).collect();
            eprintln!("error[usage]: {}", lead.join(" ").trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error[{}]: {}", f.tag, f.message.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}
