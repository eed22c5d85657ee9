//! Experiment orchestration: configuration files, ground-truth generation,
//! benchmark and scaling runs, CSV emission.
//!
//! All randomness flows from the single master seed, so reruns of the same
//! configuration are byte-identical. Wall-clock timings are the one
//! non-deterministic output; the `timing` switch (default off) therefore
//! writes zeros unless timings were explicitly requested.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::diffusion::{simulate_snapshot, DiffusionConfig, DiffusionModel, Snapshot};
use crate::error::{Error, Result};
use crate::graph::{load_edge_list, top_degree_nodes, Graph, NodeSet};
use crate::localizer::{
    bosoul_localize_with_basis, jordan_localize, netsleuth_localize, tau_seed, BosoulConfig,
    SamplingStrategy,
};
use crate::metrics::source_distance;
use crate::rng::{derive_seed, stream, Domain};
use crate::sampler::ClusterSpace;
use crate::spectral::{build_basis, load_basis, save_basis, SpectralBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Bosoul,
    Jordan,
    Netsleuth,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Bosoul => "bosoul",
            Method::Jordan => "jordan",
            Method::Netsleuth => "netsleuth",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bosoul" => Ok(Method::Bosoul),
            "jordan" => Ok(Method::Jordan),
            "netsleuth" => Ok(Method::Netsleuth),
            other => Err(Error::Config(format!("unknown method {other:?}"))),
        }
    }
}

/// How the experiment graph is obtained.
#[derive(Debug, Clone)]
pub enum GraphSpec {
    SmallWorld { n: usize, k: usize, p: f64 },
    ErdosRenyi { n: usize, p: f64 },
    EdgeList { path: PathBuf, lcc: bool },
}

impl GraphSpec {
    pub fn build(&self, master_seed: u64) -> Result<Graph> {
        match self {
            GraphSpec::SmallWorld { n, k, p } => Graph::small_world(*n, *k, *p, master_seed),
            GraphSpec::ErdosRenyi { n, p } => Graph::erdos_renyi(*n, *p, master_seed),
            GraphSpec::EdgeList { path, lcc } => {
                let loaded = load_edge_list(path)?;
                if *lcc {
                    let (g, _) = crate::graph::largest_connected_component(&loaded.graph)?;
                    Ok(g)
                } else {
                    Ok(loaded.graph)
                }
            }
        }
    }
}

/// Full description of one benchmark run, parsed from a flat `key = value`
/// configuration file.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub graph: GraphSpec,
    pub diffusion: DiffusionConfig,
    /// Steps simulated before the snapshot is taken.
    pub observation_steps: usize,
    pub n_sources: usize,
    pub repetitions: usize,
    pub methods: Vec<Method>,
    pub pool_size: usize,
    pub clusters: usize,
    pub budget: usize,
    pub rounds: usize,
    pub samples_per_cluster: usize,
    pub truncate_to: usize,
    pub filter_adjacent: bool,
    pub sampling: SamplingStrategy,
    /// Cluster on truncated spectral signals (gsg) or raw indicators (rbf).
    pub kernel_ablation_rbf: bool,
    pub seed: u64,
    pub output: Option<PathBuf>,
    /// Emit real wall-clock timings (makes the CSV non-deterministic).
    pub timing: bool,
    /// Directory for on-disk spectral basis caching, keyed by graph fingerprint.
    pub cache_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            graph: GraphSpec::SmallWorld {
                n: 1000,
                k: 10,
                p: 0.1,
            },
            diffusion: DiffusionConfig::new(DiffusionModel::Sir, 0.1, 0.1),
            observation_steps: 10,
            n_sources: 3,
            repetitions: 10,
            methods: vec![Method::Bosoul, Method::Jordan, Method::Netsleuth],
            pool_size: 50,
            clusters: 20,
            budget: 70,
            rounds: 100,
            samples_per_cluster: 1,
            truncate_to: 128,
            filter_adjacent: false,
            sampling: SamplingStrategy::Stratified,
            kernel_ablation_rbf: false,
            seed: 0,
            output: None,
            timing: false,
            cache_dir: None,
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::Config(format!("bad value for {key}: {e}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        other => Err(Error::Config(format!("bad boolean for {key}: {other:?}"))),
    }
}

impl ExperimentConfig {
    /// Parse `key = value` lines (`#` comments allowed). Unknown keys are
    /// errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut graph_type: Option<String> = None;
        let mut graph_n = 1000usize;
        let mut graph_k = 10usize;
        let mut graph_p = 0.1f64;
        let mut graph_path: Option<PathBuf> = None;
        let mut graph_lcc = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: lineno + 1,
                reason: format!("expected key = value, got {line:?}"),
            })?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "graph.type" => graph_type = Some(value.to_ascii_lowercase()),
                "graph.n" => graph_n = parse_value(key, value)?,
                "graph.k" => graph_k = parse_value(key, value)?,
                "graph.p" => graph_p = parse_value(key, value)?,
                "graph.path" => graph_path = Some(PathBuf::from(value)),
                "graph.lcc" => graph_lcc = parse_bool(key, value)?,
                "diffusion.model" => cfg.diffusion.model = DiffusionModel::parse(value)?,
                "diffusion.beta" => cfg.diffusion.infection_rate = parse_value(key, value)?,
                "diffusion.gamma" => cfg.diffusion.recovery_rate = parse_value(key, value)?,
                "diffusion.max_steps" => cfg.diffusion.max_steps = parse_value(key, value)?,
                "diffusion.patience" => cfg.diffusion.patience = parse_value(key, value)?,
                "observation.steps" => cfg.observation_steps = parse_value(key, value)?,
                "sources.n" => cfg.n_sources = parse_value(key, value)?,
                "repetitions" => cfg.repetitions = parse_value(key, value)?,
                "methods" => {
                    cfg.methods = value
                        .split(',')
                        .map(|m| Method::parse(m.trim()))
                        .collect::<Result<_>>()?;
                }
                "bosoul.pool" => cfg.pool_size = parse_value(key, value)?,
                "bosoul.clusters" => cfg.clusters = parse_value(key, value)?,
                "bosoul.budget" => cfg.budget = parse_value(key, value)?,
                "bosoul.rounds" => cfg.rounds = parse_value(key, value)?,
                "bosoul.samples_per_cluster" => {
                    cfg.samples_per_cluster = parse_value(key, value)?
                }
                "bosoul.truncate" => cfg.truncate_to = parse_value(key, value)?,
                "bosoul.filter_adjacent" => cfg.filter_adjacent = parse_bool(key, value)?,
                "ablation.sampling" => {
                    cfg.sampling = match value.to_ascii_lowercase().as_str() {
                        "gss" => SamplingStrategy::Stratified,
                        "random" => SamplingStrategy::Random,
                        other => {
                            return Err(Error::Config(format!(
                                "ablation.sampling must be gss or random, got {other:?}"
                            )))
                        }
                    }
                }
                "ablation.kernel" => {
                    cfg.kernel_ablation_rbf = match value.to_ascii_lowercase().as_str() {
                        "gsg" => false,
                        "rbf" => true,
                        other => {
                            return Err(Error::Config(format!(
                                "ablation.kernel must be gsg or rbf, got {other:?}"
                            )))
                        }
                    }
                }
                "seed" => cfg.seed = parse_value(key, value)?,
                "output" => cfg.output = Some(PathBuf::from(value)),
                "timing" => cfg.timing = parse_bool(key, value)?,
                "cache_dir" => cfg.cache_dir = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::Config(format!("unknown configuration key {other:?}")))
                }
            }
        }
        if let Some(kind) = graph_type {
            cfg.graph = match kind.as_str() {
                "sw" | "small_world" => GraphSpec::SmallWorld {
                    n: graph_n,
                    k: graph_k,
                    p: graph_p,
                },
                "er" | "erdos_renyi" => GraphSpec::ErdosRenyi {
                    n: graph_n,
                    p: graph_p,
                },
                "edgelist" => GraphSpec::EdgeList {
                    path: graph_path.ok_or_else(|| {
                        Error::Config("graph.type = edgelist requires graph.path".into())
                    })?,
                    lcc: graph_lcc,
                },
                other => return Err(Error::Config(format!("unknown graph.type {other:?}"))),
            };
        }
        if cfg.repetitions == 0 {
            return Err(Error::Config("repetitions must be >= 1".into()));
        }
        if cfg.observation_steps == 0 {
            return Err(Error::Config("observation.steps must be >= 1".into()));
        }
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Apply `key=value` override strings on top of this configuration.
    pub fn with_overrides(self, overrides: &[String]) -> Result<Self> {
        let mut text = self.to_key_values();
        for o in overrides {
            text.push('\n');
            text.push_str(o);
        }
        Self::parse(&text)
    }

    /// Flat `key = value` rendering, also used as CSV metadata.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        match &self.graph {
            GraphSpec::SmallWorld { n, k, p } => {
                let _ = writeln!(out, "graph.type = sw");
                let _ = writeln!(out, "graph.n = {n}");
                let _ = writeln!(out, "graph.k = {k}");
                let _ = writeln!(out, "graph.p = {p}");
            }
            GraphSpec::ErdosRenyi { n, p } => {
                let _ = writeln!(out, "graph.type = er");
                let _ = writeln!(out, "graph.n = {n}");
                let _ = writeln!(out, "graph.p = {p}");
            }
            GraphSpec::EdgeList { path, lcc } => {
                let _ = writeln!(out, "graph.type = edgelist");
                let _ = writeln!(out, "graph.path = {}", path.display());
                let _ = writeln!(out, "graph.lcc = {lcc}");
            }
        }
        let _ = writeln!(out, "diffusion.model = {}", self.diffusion.model);
        let _ = writeln!(out, "diffusion.beta = {}", self.diffusion.infection_rate);
        let _ = writeln!(out, "diffusion.gamma = {}", self.diffusion.recovery_rate);
        let _ = writeln!(out, "diffusion.max_steps = {}", self.diffusion.max_steps);
        let _ = writeln!(out, "diffusion.patience = {}", self.diffusion.patience);
        let _ = writeln!(out, "observation.steps = {}", self.observation_steps);
        let _ = writeln!(out, "sources.n = {}", self.n_sources);
        let _ = writeln!(out, "repetitions = {}", self.repetitions);
        let _ = writeln!(
            out,
            "methods = {}",
            self.methods
                .iter()
                .map(|m| m.name())
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(out, "bosoul.pool = {}", self.pool_size);
        let _ = writeln!(out, "bosoul.clusters = {}", self.clusters);
        let _ = writeln!(out, "bosoul.budget = {}", self.budget);
        let _ = writeln!(out, "bosoul.rounds = {}", self.rounds);
        let _ = writeln!(
            out,
            "bosoul.samples_per_cluster = {}",
            self.samples_per_cluster
        );
        let _ = writeln!(out, "bosoul.truncate = {}", self.truncate_to);
        let _ = writeln!(out, "bosoul.filter_adjacent = {}", self.filter_adjacent);
        let _ = writeln!(
            out,
            "ablation.sampling = {}",
            match self.sampling {
                SamplingStrategy::Stratified => "gss",
                SamplingStrategy::Random => "random",
            }
        );
        let _ = writeln!(
            out,
            "ablation.kernel = {}",
            if self.kernel_ablation_rbf { "rbf" } else { "gsg" }
        );
        let _ = writeln!(out, "seed = {}", self.seed);
        if let Some(output) = &self.output {
            let _ = writeln!(out, "output = {}", output.display());
        }
        let _ = writeln!(out, "timing = {}", self.timing);
        if let Some(dir) = &self.cache_dir {
            let _ = writeln!(out, "cache_dir = {}", dir.display());
        }
        out
    }

    pub fn bosoul_config(&self, seed: u64) -> BosoulConfig {
        let mut cfg = BosoulConfig::new(self.n_sources, self.diffusion, seed);
        cfg.pool_size = self.pool_size;
        cfg.clusters = self.clusters;
        cfg.budget = self.budget;
        cfg.rounds = self.rounds;
        cfg.samples_per_cluster = self.samples_per_cluster;
        cfg.filter_adjacent = self.filter_adjacent;
        cfg.sampling = self.sampling;
        cfg.cluster_space = if self.kernel_ablation_rbf {
            ClusterSpace::Indicator
        } else {
            ClusterSpace::Spectral {
                truncate_to: self.truncate_to,
            }
        };
        cfg
    }
}

/// Sample `n` pairwise non-adjacent sources from the top-`pool_size` degree
/// pool and simulate `observation_steps` steps to produce the observed
/// snapshot. Resamples (at most 20 times) if fewer than `n` nodes end up
/// infected.
pub fn generate_ground_truth(
    g: &Graph,
    n: usize,
    diffusion: &DiffusionConfig,
    observation_steps: usize,
    pool_size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(NodeSet, Snapshot)> {
    const SOURCE_ATTEMPTS: usize = 10_000;
    const SNAPSHOT_ATTEMPTS: usize = 20;
    diffusion.validate()?;
    let pool = top_degree_nodes(g, pool_size.min(g.n_nodes()))?;
    if n > pool.len() {
        return Err(Error::GroundTruth {
            reason: format!("need {n} sources but the pool has only {}", pool.len()),
        });
    }
    for _ in 0..SNAPSHOT_ATTEMPTS {
        let mut sources = None;
        'rejection: for _ in 0..SOURCE_ATTEMPTS {
            let mut picked: Vec<usize> = Vec::with_capacity(n);
            let mut remaining = pool.clone();
            for i in 0..n {
                let j = rng.gen_range(i..remaining.len());
                remaining.swap(i, j);
                picked.push(remaining[i]);
            }
            for (i, &u) in picked.iter().enumerate() {
                for &v in &picked[i + 1..] {
                    if g.has_edge(u, v) {
                        continue 'rejection;
                    }
                }
            }
            sources = Some(NodeSet::new(picked));
            break;
        }
        let sources = sources.ok_or_else(|| Error::GroundTruth {
            reason: format!(
                "no pairwise non-adjacent {n}-subset of the pool found in {SOURCE_ATTEMPTS} attempts"
            ),
        })?;
        let o_star = simulate_snapshot(g, &sources, diffusion, observation_steps, rng);
        if o_star.infected_count() >= n {
            return Ok((sources, o_star));
        }
    }
    Err(Error::GroundTruth {
        reason: format!("snapshot kept fewer than {n} infected nodes after {SNAPSHOT_ATTEMPTS} resamples"),
    })
}

#[derive(Debug, Clone)]
pub struct RunRecord {
    pub run: usize,
    pub method: Method,
    pub seed: u64,
    pub distance: Option<u64>,
    pub seconds: f64,
    pub tau: Option<f64>,
    pub status: String,
}

#[derive(Debug, Clone)]
pub struct MethodSummary {
    pub method: Method,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub records: Vec<RunRecord>,
    pub summaries: Vec<MethodSummary>,
    pub csv: String,
}

fn summarize(records: &[RunRecord], methods: &[Method]) -> Vec<MethodSummary> {
    methods
        .iter()
        .map(|&method| {
            let distances: Vec<f64> = records
                .iter()
                .filter(|r| r.method == method)
                .filter_map(|r| r.distance.map(|d| d as f64))
                .collect();
            let n = distances.len();
            let mean = if n > 0 {
                distances.iter().sum::<f64>() / n as f64
            } else {
                f64::NAN
            };
            let std = if n > 1 {
                (distances.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
            } else {
                0.0
            };
            MethodSummary { method, mean, std }
        })
        .collect()
}

fn render_csv(cfg: &ExperimentConfig, records: &[RunRecord], summaries: &[MethodSummary]) -> String {
    let mut out = String::new();
    for line in cfg.to_key_values().lines() {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str("run,method,seed,distance,seconds,tau,status\n");
    for r in records {
        let distance = r.distance.map(|d| d.to_string()).unwrap_or_default();
        let tau = r.tau.map(|t| format!("{t:.6}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{},{}",
            r.run,
            r.method.name(),
            r.seed,
            distance,
            r.seconds,
            tau,
            r.status
        );
    }
    out.push('\n');
    out.push_str("method,mean,std\n");
    for s in summaries {
        let _ = writeln!(out, "{},{:.6},{:.6}", s.method.name(), s.mean, s.std);
    }
    out
}

fn basis_for(g: &Graph, cache_dir: Option<&std::path::Path>) -> Result<SpectralBasis> {
    let fingerprint = g.fingerprint();
    if let Some(dir) = cache_dir {
        std::fs::create_dir_all(dir)?;
        let mut name = String::from("basis-");
        for byte in &fingerprint[..8] {
            let _ = write!(name, "{byte:02x}");
        }
        name.push_str(".bin");
        let path = dir.join(name);
        if path.exists() {
            if let Ok(basis) = load_basis(&path, &fingerprint) {
                return Ok(basis);
            }
        }
        let basis = build_basis(g)?;
        save_basis(&path, &basis)?;
        Ok(basis)
    } else {
        build_basis(g)
    }
}

/// Run every configured method on shared per-repetition ground truths and
/// write the results CSV (when `output` is set).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let g = cfg.graph.build(cfg.seed)?;
    let basis = basis_for(&g, cfg.cache_dir.as_deref())?;
    let mut records = Vec::new();
    for run in 0..cfg.repetitions {
        let rep_seed = derive_seed(cfg.seed, Domain::Repetition, run as u64);
        let mut gt_rng = stream(cfg.seed, Domain::GroundTruth, run as u64);
        let (truth, o_star) = generate_ground_truth(
            &g,
            cfg.n_sources,
            &cfg.diffusion,
            cfg.observation_steps,
            cfg.pool_size,
            &mut gt_rng,
        )?;
        for &method in &cfg.methods {
            let started = Instant::now();
            let outcome: Result<(NodeSet, Option<f64>)> = match method {
                Method::Bosoul => {
                    let bcfg = cfg.bosoul_config(rep_seed);
                    bosoul_localize_with_basis(&g, &basis, &o_star, &bcfg).map(|result| {
                        // τ of the chosen set, evaluated on its
                        // content-derived seed if the loop never simulated it.
                        let tau = result.chosen_tau.or_else(|| {
                            crate::diffusion::estimate_tau(
                                &g,
                                &result.sources,
                                &o_star,
                                &cfg.diffusion,
                                cfg.rounds,
                                tau_seed(rep_seed, result.chosen_set_id),
                            )
                            .ok()
                            .map(|e| e.mean)
                        });
                        (result.sources, tau)
                    })
                }
                Method::Jordan => {
                    jordan_localize(&g, &o_star, cfg.n_sources).map(|s| (s, None))
                }
                Method::Netsleuth => {
                    netsleuth_localize(&g, &o_star, cfg.n_sources).map(|s| (s, None))
                }
            };
            let seconds = if cfg.timing {
                started.elapsed().as_secs_f64()
            } else {
                0.0
            };
            let record = match outcome {
                Ok((sources, tau)) => {
                    match source_distance(&g, &sources, &truth) {
                        Ok(report) => RunRecord {
                            run,
                            method,
                            seed: rep_seed,
                            distance: Some(report.total),
                            seconds,
                            tau,
                            status: "ok".into(),
                        },
                        Err(e) => failed_record(run, method, rep_seed, seconds, &e),
                    }
                }
                Err(e) => failed_record(run, method, rep_seed, seconds, &e),
            };
            records.push(record);
        }
    }
    records.sort_by_key(|r| {
        (
            r.run,
            cfg.methods.iter().position(|&m| m == r.method).unwrap_or(0),
        )
    });
    let summaries = summarize(&records, &cfg.methods);
    let csv = render_csv(cfg, &records, &summaries);
    if let Some(path) = &cfg.output {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        std::fs::write(path, &csv)?;
    }
    Ok(ExperimentOutcome {
        records,
        summaries,
        csv,
    })
}

fn failed_record(run: usize, method: Method, seed: u64, seconds: f64, e: &Error) -> RunRecord {
    RunRecord {
        run,
        method,
        seed,
        distance: None,
        seconds,
        tau: None,
        status: format!("failed: {e}").replace(',', ";"),
    }
}

#[derive(Debug, Clone)]
pub struct ScalingRecord {
    pub size: usize,
    pub method: Method,
    pub rep: usize,
    pub seconds: f64,
}

/// Timed localizations across graph sizes (Watts-Strogatz graphs with the
/// template's degree). Basis construction is part of the timed region.
pub fn run_scaling_bench(sizes: &[usize], template: &ExperimentConfig) -> Result<Vec<ScalingRecord>> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("sizes must be strictly ascending".into()));
    }
    let k = match template.graph {
        GraphSpec::SmallWorld { k, .. } => k,
        _ => 10,
    };
    let mut records = Vec::new();
    for &size in sizes {
        let g = Graph::small_world(size, k, 0.1, template.seed)?;
        for rep in 0..template.repetitions {
            let rep_seed = derive_seed(template.seed, Domain::Repetition, rep as u64);
            let mut gt_rng = stream(template.seed, Domain::GroundTruth, rep as u64);
            let (_, o_star) = generate_ground_truth(
                &g,
                template.n_sources,
                &template.diffusion,
                template.observation_steps,
                template.pool_size,
                &mut gt_rng,
            )?;
            for &method in &template.methods {
                let started = Instant::now();
                let ok = match method {
                    Method::Bosoul => {
                        let bcfg = template.bosoul_config(rep_seed);
                        crate::localizer::bosoul_localize(&g, &o_star, &bcfg).is_ok()
                    }
                    Method::Jordan => {
                        jordan_localize(&g, &o_star, template.n_sources).is_ok()
                    }
                    Method::Netsleuth => {
                        netsleuth_localize(&g, &o_star, template.n_sources).is_ok()
                    }
                };
                let seconds = started.elapsed().as_secs_f64();
                if ok {
                    records.push(ScalingRecord {
                        size,
                        method,
                        rep,
                        seconds,
                    });
                }
            }
        }
    }
    Ok(records)
}

pub fn render_scaling_csv(records: &[ScalingRecord]) -> String {
    let mut out = String::from("size,method,rep,seconds\n");
    for r in records {
        let _ = writeln!(out, "{},{},{},{:.6}", r.size, r.method.name(), r.rep, r.seconds);
    }
    out
}

/// Structured text report for a single localization, used by the CLI.
pub fn render_report(method: Method, sources: &NodeSet, tau: Option<f64>, seconds: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "method: {}", method.name());
    let _ = writeln!(
        out,
        "sources: {}",
        sources
            .members()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    if let Some(t) = tau {
        let _ = writeln!(out, "tau: {t:.6}");
    }
    let _ = writeln!(out, "seconds: {seconds:.6}");
    out
}

/// Cross-check helper used by tests: recompute summaries from per-run rows.
pub fn recompute_summaries(records: &[RunRecord], methods: &[Method]) -> Vec<MethodSummary> {
    summarize(records, methods)
}
