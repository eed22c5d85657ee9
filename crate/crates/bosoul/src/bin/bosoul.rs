//! Command-line front end: graph generation, diffusion simulation, source
//! localization, benchmarking, and scaling runs. All heavy lifting lives in
//! the library; this binary only parses arguments and moves bytes.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use bosoul::diffusion::{simulate_snapshot, DiffusionConfig, DiffusionModel, Snapshot};
use bosoul::graph::{load_edge_list, Graph, NodeSet};
use bosoul::harness::{
    render_report, render_scaling_csv, run_experiment, run_scaling_bench, ExperimentConfig,
    Method,
};
use bosoul::localizer::{bosoul_localize, jordan_localize, netsleuth_localize, SamplingStrategy};
use bosoul::rng::{stream, Domain};
use bosoul::sampler::ClusterSpace;

#[derive(Parser)]
#[command(name = "bosoul", version, about = "Diffusion source localization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph and print or write its edge list.
    Generate(GenerateArgs),
    /// Simulate a diffusion process and emit the observed snapshot CSV.
    Simulate(SimulateArgs),
    /// Localize diffusion sources from a graph and snapshot.
    Localize(LocalizeArgs),
    /// Run a configured benchmark and emit the results CSV.
    Bench(BenchArgs),
    /// Time localizations across graph sizes.
    Scaling(ScalingArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Graph family: sw (Watts-Strogatz) or er (Erdos-Renyi).
    #[arg(long, default_value = "sw")]
    kind: String,
    #[arg(long, default_value_t = 1000)]
    nodes: usize,
    /// Ring-lattice neighbor count (sw only).
    #[arg(long, default_value_t = 10)]
    degree: usize,
    /// Rewiring probability (sw) or edge probability (er).
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the edge list here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Edge-list file of the graph.
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated source node ids.
    #[arg(long)]
    sources: String,
    #[arg(long, default_value = "sir")]
    model: String,
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    #[arg(long, default_value_t = 0.1)]
    gamma: f64,
    /// Observation time: steps simulated before the snapshot.
    #[arg(long, default_value_t = 10)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the snapshot CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LocalizeArgs {
    /// Edge-list file of the graph.
    #[arg(long)]
    graph: PathBuf,
    /// Snapshot CSV of observed node states.
    #[arg(long)]
    snapshot: PathBuf,
    /// bosoul, jordan, or netsleuth.
    #[arg(long, default_value = "bosoul")]
    method: String,
    /// Number of sources to recover.
    #[arg(long, default_value_t = 3)]
    sources: usize,
    #[arg(long, default_value = "sir")]
    model: String,
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    #[arg(long, default_value_t = 0.1)]
    gamma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidate pool size (top nodes by degree).
    #[arg(long, default_value_t = 50)]
    pool: usize,
    #[arg(long, default_value_t = 20)]
    clusters: usize,
    /// Total simulation-evaluation budget.
    #[arg(long, default_value_t = 70)]
    budget: usize,
    /// Simulation rounds per candidate evaluation.
    #[arg(long, default_value_t = 100)]
    rounds: usize,
    /// Replace stratified sampling with simple random sampling.
    #[arg(long)]
    random_sampling: bool,
    /// Cluster on raw indicators instead of truncated spectral signals.
    #[arg(long)]
    indicator_clustering: bool,
    /// Drop candidate sets containing adjacent node pairs.
    #[arg(long)]
    filter_adjacent: bool,
    /// Report real wall-clock seconds (non-deterministic output).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Configuration file of `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a configuration key, e.g. --set seed=7 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Args)]
struct ScalingArgs {
    /// Configuration file used as the template for each size.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated ascending graph sizes.
    #[arg(long, default_value = "1000,2000,3000")]
    sizes: String,
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Write the timing CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_id_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|tok| tok.trim().parse::<usize>().map_err(|e| format!("bad id {tok:?}: {e}")))
        .collect()
}

fn emit(output: Option<&PathBuf>, text: &str) -> bosoul::Result<()> {
    match output {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn build_graph(args: &GenerateArgs) -> bosoul::Result<Graph> {
    match args.kind.to_ascii_lowercase().as_str() {
        "sw" | "small_world" => Graph::small_world(args.nodes, args.degree, args.p, args.seed),
        "er" | "erdos_renyi" => Graph::erdos_renyi(args.nodes, args.p, args.seed),
        other => Err(bosoul::Error::Config(format!("unknown graph kind {other:?}"))),
    }
}

fn load_config(path: Option<&PathBuf>, overrides: &[String]) -> bosoul::Result<ExperimentConfig> {
    let base = match path {
        Some(p) => ExperimentConfig::from_file(p)?,
        None => ExperimentConfig::default(),
    };
    base.with_overrides(overrides)
}

fn run(cli: Cli) -> bosoul::Result<()> {
    match cli.command {
        Command::Generate(args) => {
            let g = build_graph(&args)?;
            emit(args.output.as_ref(), &g.to_edge_list_string())?;
        }
        Command::Simulate(args) => {
            let g = load_edge_list(&args.graph)?.graph;
            let sources = NodeSet::new(
                parse_id_list(&args.sources).map_err(bosoul::Error::Config)?,
            );
            for &s in sources.members() {
                if s >= g.n_nodes() {
                    return Err(bosoul::Error::InvalidNodeId {
                        id: s,
                        n_nodes: g.n_nodes(),
                    });
                }
            }
            let cfg = DiffusionConfig::new(
                DiffusionModel::parse(&args.model)?,
                args.beta,
                args.gamma,
            );
            cfg.validate()?;
            let mut rng = stream(args.seed, Domain::SimulationRound, 0);
            let snapshot = simulate_snapshot(&g, &sources, &cfg, args.steps, &mut rng);
            emit(args.output.as_ref(), &snapshot.to_csv())?;
        }
        Command::Localize(args) => {
            let g = load_edge_list(&args.graph)?.graph;
            let o_star = Snapshot::load_csv(&args.snapshot, g.n_nodes())?;
            let method = Method::parse(&args.method)?;
            let started = Instant::now();
            let (sources, tau) = match method {
                Method::Bosoul => {
                    let diffusion = DiffusionConfig::new(
                        DiffusionModel::parse(&args.model)?,
                        args.beta,
                        args.gamma,
                    );
                    let mut cfg =
                        bosoul::BosoulConfig::new(args.sources, diffusion, args.seed);
                    cfg.pool_size = args.pool;
                    cfg.clusters = args.clusters;
                    cfg.budget = args.budget;
                    cfg.rounds = args.rounds;
                    cfg.filter_adjacent = args.filter_adjacent;
                    if args.random_sampling {
                        cfg.sampling = SamplingStrategy::Random;
                    }
                    if args.indicator_clustering {
                        cfg.cluster_space = ClusterSpace::Indicator;
                    }
                    let result = bosoul_localize(&g, &o_star, &cfg)?;
                    (result.sources, result.chosen_tau)
                }
                Method::Jordan => (jordan_localize(&g, &o_star, args.sources)?, None),
                Method::Netsleuth => (netsleuth_localize(&g, &o_star, args.sources)?, None),
            };
            let seconds = if args.timing {
                started.elapsed().as_secs_f64()
            } else {
                0.0
            };
            print!("{}", render_report(method, &sources, tau, seconds));
        }
        Command::Bench(args) => {
            let cfg = load_config(args.config.as_ref(), &args.overrides)?;
            let outcome = run_experiment(&cfg)?;
            print!("{}", outcome.csv);
        }
        Command::Scaling(args) => {
            let cfg = load_config(args.config.as_ref(), &args.overrides)?;
            let sizes = parse_id_list(&args.sizes).map_err(bosoul::Error::Config)?;
            let records = run_scaling_bench(&sizes, &cfg)?;
            emit(args.output.as_ref(), &render_scaling_csv(&records))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
