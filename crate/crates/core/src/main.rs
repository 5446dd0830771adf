use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use graphalg::harness::{run_benchmark, Algorithm, BenchConfig, GraphSource};
use graphalg::io::RmatParams;
use graphalg::DirectionPolicy;

#[derive(Parser)]
#[command(name = "graphalg", version, about = "Run and time semiring graph algorithms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Breadth-first search levels
    Bfs(Common),
    /// Single-source shortest paths (weights 1..=64 for unweighted inputs)
    Sssp(Common),
    /// PageRank
    Pr(Common),
    /// Connected components
    Cc(Common),
    /// Triangle count
    Tc(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Auto,
    ForcePush,
    ForcePull,
}

#[derive(Args)]
struct Common {
    /// MatrixMarket coordinate file
    #[arg(long, conflicts_with = "rmat_scale", required_unless_present = "rmat_scale")]
    graph: Option<PathBuf>,
    /// Generate an R-MAT graph with 2^N vertices
    #[arg(long, value_name = "N")]
    rmat_scale: Option<u32>,
    #[arg(long, default_value_t = 16)]
    edge_factor: u64,
    /// Seed for R-MAT sampling and edge weights
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    source: usize,
    #[arg(long, default_value_t = graphalg::algorithms::DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = graphalg::algorithms::DEFAULT_EPS)]
    eps: f64,
    #[arg(long, default_value_t = graphalg::descriptor::DEFAULT_MAX_NITER)]
    max_iters: usize,
    #[arg(long, value_enum, default_value = "auto")]
    direction: DirectionArg,
    #[arg(long, default_value_t = graphalg::descriptor::DEFAULT_SWITCH_RATIO)]
    switch_ratio: f64,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Worker threads (default: all hardware threads)
    #[arg(long)]
    threads: Option<usize>,
    /// Check the result against a reference implementation
    #[arg(long)]
    verify: bool,
    /// Print the report as JSON
    #[arg(long)]
    json: bool,
    /// Print the per-iteration direction trace
    #[arg(long)]
    trace: bool,
}

fn config(algorithm: Algorithm, c: &Common) -> BenchConfig {
    let graph = match (&c.graph, c.rmat_scale) {
        (Some(p), _) => GraphSource::File(p.clone()),
        (None, Some(scale)) => GraphSource::Rmat(RmatParams::new(scale, c.edge_factor, c.seed)),
        (None, None) => unreachable!("clap requires one graph source"),
    };
    let mut cfg = BenchConfig::new(algorithm, graph);
    cfg.source = c.source;
    cfg.alpha = c.alpha;
    cfg.eps = c.eps;
    cfg.max_iters = c.max_iters;
    cfg.direction = match c.direction {
        DirectionArg::Auto => DirectionPolicy::Auto,
        DirectionArg::ForcePush => DirectionPolicy::ForcePush,
        DirectionArg::ForcePull => DirectionPolicy::ForcePull,
    };
    cfg.switch_ratio = c.switch_ratio;
    cfg.runs = c.runs;
    if let Some(t) = c.threads {
        cfg.threads = t.max(1);
    }
    cfg.verify = c.verify;
    cfg.weight_seed = c.seed;
    cfg
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (algorithm, common) = match &cli.command {
        Command::Bfs(c) => (Algorithm::Bfs, c),
        Command::Sssp(c) => (Algorithm::Sssp, c),
        Command::Pr(c) => (Algorithm::Pr, c),
        Command::Cc(c) => (Algorithm::Cc, c),
        Command::Tc(c) => (Algorithm::Tc, c),
    };
    let report = match run_benchmark(&config(algorithm, common)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("graphalg: {e}");
            return ExitCode::from(1);
        }
    };
    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("{}", report.summary_line());
        if common.trace {
            print!("{}", report.trace_table());
        }
        if let Some(v) = &report.verification {
            println!("verify: {}", v.detail);
        }
    }
    match &report.verification {
        Some(v) if !v.passed => ExitCode::from(3),
        _ => ExitCode::SUCCESS,
    }
}
