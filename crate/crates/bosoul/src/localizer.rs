//! End-to-end source localization: the Bayesian-optimization loop over
//! candidate source sets, plus the Jordan-centrality and NetSleuth baselines.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::diffusion::{estimate_tau, DiffusionConfig, Snapshot};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::rng::{derive_seed, stream, Domain};
use crate::sampler::{
    cluster_candidates, enumerate_candidates_with, gss_sample, random_sample, ClusterSpace,
};
use crate::spectral::{build_basis, SpectralBasis};
use crate::surrogate::SurrogateModel;

/// How candidate batches are drawn each iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplingStrategy {
    /// Graph stratified sampling: uniform draws per cluster.
    #[default]
    Stratified,
    /// Simple random sampling over all candidates (ablation).
    Random,
}

#[derive(Debug, Clone)]
pub struct BosoulConfig {
    /// Candidate pool size: the top `a` nodes by degree.
    pub pool_size: usize,
    /// Known number of sources.
    pub n_sources: usize,
    /// Number of clusters b.
    pub clusters: usize,
    /// Sets sampled per cluster in each iteration.
    pub samples_per_cluster: usize,
    /// Total simulation-evaluation budget k (initialization included).
    pub budget: usize,
    /// Simulation rounds averaged per τ evaluation.
    pub rounds: usize,
    pub diffusion: DiffusionConfig,
    pub seed: u64,
    pub cluster_space: ClusterSpace,
    pub sampling: SamplingStrategy,
    /// Drop candidate sets containing adjacent node pairs.
    pub filter_adjacent: bool,
    /// Propagate per-round simulation variance into the GP as per-point noise.
    pub per_point_noise: bool,
}

impl BosoulConfig {
    pub fn new(n_sources: usize, diffusion: DiffusionConfig, seed: u64) -> Self {
        Self {
            pool_size: 50,
            n_sources,
            clusters: 20,
            samples_per_cluster: 1,
            budget: 70,
            rounds: 100,
            diffusion,
            seed,
            cluster_space: ClusterSpace::default(),
            sampling: SamplingStrategy::default(),
            filter_adjacent: false,
            per_point_noise: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.diffusion.validate()?;
        let positive: [(&'static str, usize); 6] = [
            ("pool_size", self.pool_size),
            ("n_sources", self.n_sources),
            ("clusters", self.clusters),
            ("samples_per_cluster", self.samples_per_cluster),
            ("budget", self.budget),
            ("rounds", self.rounds),
        ];
        for (name, value) in positive {
            if value == 0 {
                return Err(Error::InvalidParameter {
                    name,
                    reason: "must be >= 1".into(),
                });
            }
        }
        if self.n_sources > self.pool_size {
            return Err(Error::InvalidParameter {
                name: "n_sources",
                reason: format!("{} exceeds pool size {}", self.n_sources, self.pool_size),
            });
        }
        if self.clusters > self.budget {
            return Err(Error::InvalidParameter {
                name: "budget",
                reason: format!(
                    "budget {} is below the cluster count {}",
                    self.budget, self.clusters
                ),
            });
        }
        Ok(())
    }
}

/// One evaluation in the optimization trace.
#[derive(Debug, Clone, Copy)]
pub struct TraceEntry {
    pub set_id: usize,
    /// Acquisition value that selected this set; `None` for initialization.
    pub ei: Option<f64>,
    pub tau: f64,
}

#[derive(Debug, Clone)]
pub struct LocalizationResult {
    pub sources: NodeSet,
    /// Candidate id of the returned set within the enumerated pool.
    pub chosen_set_id: usize,
    /// τ of the returned set, if it was among the evaluated candidates.
    pub chosen_tau: Option<f64>,
    /// All `(set id, τ)` pairs, in evaluation order.
    pub evaluations: Vec<(usize, f64)>,
    pub trace: Vec<TraceEntry>,
    /// Posterior mean of the returned set.
    pub posterior_mean: f64,
    pub duration: Duration,
}

/// Seed for the τ evaluation of candidate `set_id`; keyed by content so the
/// same candidate always sees the same simulation streams.
pub fn tau_seed(master: u64, set_id: usize) -> u64 {
    derive_seed(master, Domain::TauEvaluation, set_id as u64)
}

/// Run the full loop against a prebuilt spectral basis.
pub fn bosoul_localize_with_basis(
    g: &Graph,
    basis: &SpectralBasis,
    o_star: &Snapshot,
    cfg: &BosoulConfig,
) -> Result<LocalizationResult> {
    let started = Instant::now();
    cfg.validate()?;
    if o_star.infected_count() == 0 {
        return Err(Error::InvalidParameter {
            name: "o_star",
            reason: "snapshot has no infected nodes".into(),
        });
    }

    let pool = enumerate_candidates_with(
        g,
        basis,
        cfg.pool_size,
        cfg.n_sources,
        cfg.cluster_space,
        cfg.filter_adjacent,
    )?;
    if cfg.budget > pool.len() {
        return Err(Error::InvalidParameter {
            name: "budget",
            reason: format!(
                "budget {} exceeds the {} enumerable candidates",
                cfg.budget,
                pool.len()
            ),
        });
    }
    let b = cfg.clusters.min(pool.len());
    let pool = cluster_candidates(pool, b, cfg.seed)?;

    let mut evaluated: HashSet<usize> = HashSet::new();
    let mut evaluations: Vec<(usize, f64)> = Vec::with_capacity(cfg.budget);
    let mut trace: Vec<TraceEntry> = Vec::with_capacity(cfg.budget);
    let mut inputs: Vec<Vec<f64>> = Vec::with_capacity(cfg.budget);
    let mut targets: Vec<f64> = Vec::with_capacity(cfg.budget);
    let mut noises: Vec<f64> = Vec::with_capacity(cfg.budget);

    let evaluate = |set_id: usize,
                        ei: Option<f64>,
                        evaluated: &mut HashSet<usize>,
                        evaluations: &mut Vec<(usize, f64)>,
                        trace: &mut Vec<TraceEntry>,
                        inputs: &mut Vec<Vec<f64>>,
                        targets: &mut Vec<f64>,
                        noises: &mut Vec<f64>|
     -> Result<()> {
        let est = estimate_tau(
            g,
            &pool.sets()[set_id],
            o_star,
            &cfg.diffusion,
            cfg.rounds,
            tau_seed(cfg.seed, set_id),
        )?;
        evaluated.insert(set_id);
        evaluations.push((set_id, est.mean));
        trace.push(TraceEntry {
            set_id,
            ei,
            tau: est.mean,
        });
        inputs.push(pool.indicator(set_id));
        targets.push(est.mean);
        noises.push(est.variance / est.rounds as f64);
        Ok(())
    };

    // Initialization: one draw per cluster (or b random draws).
    let mut init_rng = stream(cfg.seed, Domain::Initialization, 0);
    let init_ids = match cfg.sampling {
        SamplingStrategy::Stratified => gss_sample(&pool, 1, &mut init_rng, &evaluated)?,
        SamplingStrategy::Random => {
            random_sample(&pool, cfg.clusters, &mut init_rng, &evaluated)?
        }
    };
    for id in init_ids {
        if evaluations.len() >= cfg.budget {
            break;
        }
        evaluate(
            id,
            None,
            &mut evaluated,
            &mut evaluations,
            &mut trace,
            &mut inputs,
            &mut targets,
            &mut noises,
        )?;
    }

    let fit = |inputs: &[Vec<f64>], targets: &[f64], noises: &[f64]| -> Result<SurrogateModel> {
        if cfg.per_point_noise {
            SurrogateModel::fit_with_point_noise(
                inputs.to_vec(),
                targets.to_vec(),
                None,
                noises.iter().map(|&v| v.max(1e-6)).collect(),
            )
        } else {
            SurrogateModel::fit(inputs.to_vec(), targets.to_vec(), None, None)
        }
    };
    let mut model = fit(&inputs, &targets, &noises)?;

    // Acquisition iterations: sample a fresh batch, take the EI maximizer.
    let mut iteration = 0u64;
    while evaluations.len() < cfg.budget {
        let mut rng = stream(cfg.seed, Domain::Iteration, iteration);
        iteration += 1;
        let batch_ids = match cfg.sampling {
            SamplingStrategy::Stratified => {
                gss_sample(&pool, cfg.samples_per_cluster, &mut rng, &evaluated)?
            }
            SamplingStrategy::Random => random_sample(
                &pool,
                cfg.clusters * cfg.samples_per_cluster,
                &mut rng,
                &evaluated,
            )?,
        };
        let batch: Vec<Vec<f64>> = batch_ids.iter().map(|&id| pool.indicator(id)).collect();
        let best = model.best_observed();
        let chosen = model.argmax_ei(&batch, best)?;
        evaluate(
            batch_ids[chosen.index],
            Some(chosen.ei),
            &mut evaluated,
            &mut evaluations,
            &mut trace,
            &mut inputs,
            &mut targets,
            &mut noises,
        )?;
        model = fit(&inputs, &targets, &noises)?;
    }

    // Final prediction: posterior mean over every candidate, ties to the
    // lowest set id.
    let mut best_id = 0usize;
    let mut best_mean = f64::NEG_INFINITY;
    for id in 0..pool.len() {
        let (mean, _) = model.posterior(&pool.indicator(id))?;
        if mean > best_mean {
            best_mean = mean;
            best_id = id;
        }
    }

    let chosen_tau = evaluations
        .iter()
        .find(|&&(id, _)| id == best_id)
        .map(|&(_, tau)| tau);
    Ok(LocalizationResult {
        sources: pool.sets()[best_id].clone(),
        chosen_set_id: best_id,
        chosen_tau,
        evaluations,
        trace,
        posterior_mean: best_mean,
        duration: started.elapsed(),
    })
}

/// Build the spectral basis and run the full loop.
pub fn bosoul_localize(g: &Graph, o_star: &Snapshot, cfg: &BosoulConfig) -> Result<LocalizationResult> {
    let started = Instant::now();
    let basis = build_basis(g)?;
    let mut result = bosoul_localize_with_basis(g, &basis, o_star, cfg)?;
    result.duration = started.elapsed();
    Ok(result)
}

/// Induced subgraph over the infected nodes: local adjacency plus the
/// local → original id mapping.
struct InfectedSubgraph {
    orig: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

impl InfectedSubgraph {
    fn build(g: &Graph, o_star: &Snapshot) -> Result<Self> {
        if o_star.len() != g.n_nodes() {
            return Err(Error::DimensionMismatch {
                expected: g.n_nodes(),
                got: o_star.len(),
            });
        }
        let orig = o_star.infected_nodes();
        if orig.is_empty() {
            return Err(Error::InvalidParameter {
                name: "o_star",
                reason: "snapshot has no infected nodes".into(),
            });
        }
        let mut local = vec![usize::MAX; g.n_nodes()];
        for (i, &v) in orig.iter().enumerate() {
            local[v] = i;
        }
        let adjacency = orig
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter_map(|&u| (local[u] != usize::MAX).then(|| local[u]))
                    .collect()
            })
            .collect();
        Ok(Self { orig, adjacency })
    }

    fn n(&self) -> usize {
        self.orig.len()
    }

    /// Components as local-id lists, ordered by (size desc, smallest original
    /// id asc); nodes within a component sorted by local id.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut components = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut nodes = vec![start];
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        nodes.push(v);
                        queue.push_back(v);
                    }
                }
            }
            nodes.sort_unstable();
            components.push(nodes);
        }
        components.sort_by_key(|c| (std::cmp::Reverse(c.len()), self.orig[c[0]]));
        components
    }

    /// Hop distances from `source` restricted to the subgraph.
    fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Pad a short pick list up to `n` with high-degree uninfected neighbors of
/// the infected set, then any remaining high-degree uninfected nodes.
fn pad_selection(g: &Graph, o_star: &Snapshot, mut picks: Vec<usize>, n: usize) -> Vec<usize> {
    if picks.len() >= n {
        picks.truncate(n);
        return picks;
    }
    let chosen: HashSet<usize> = picks.iter().copied().collect();
    let infected: HashSet<usize> = o_star.infected_nodes().into_iter().collect();
    let mut frontier: Vec<usize> = infected
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .filter(|v| !infected.contains(v) && !chosen.contains(v))
        .collect();
    frontier.sort_unstable();
    frontier.dedup();
    frontier.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for v in frontier {
        if picks.len() == n {
            return picks;
        }
        picks.push(v);
    }
    let taken: HashSet<usize> = picks.iter().copied().collect();
    let mut rest: Vec<usize> = (0..g.n_nodes())
        .filter(|v| !taken.contains(v) && !infected.contains(v))
        .collect();
    rest.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for v in rest {
        if picks.len() == n {
            break;
        }
        picks.push(v);
    }
    picks
}

/// Interleave per-component pick lists round-robin (components already ordered
/// by size) up to `limit` picks.
fn round_robin(per_component: Vec<Vec<usize>>, limit: usize) -> Vec<usize> {
    let mut picks = Vec::new();
    let mut cursors = vec![0usize; per_component.len()];
    while picks.len() < limit {
        let mut advanced = false;
        for (c, ranking) in per_component.iter().enumerate() {
            if picks.len() == limit {
                break;
            }
            if cursors[c] < ranking.len() {
                picks.push(ranking[cursors[c]]);
                cursors[c] += 1;
                advanced = true;
            }
        }
        if !advanced {
            break;
        }
    }
    picks
}

/// Jordan-centrality baseline: nodes of minimum eccentricity within the
/// infected subgraph, per component, round-robin across components.
pub fn jordan_localize(g: &Graph, o_star: &Snapshot, n: usize) -> Result<NodeSet> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "must be >= 1".into(),
        });
    }
    let sub = InfectedSubgraph::build(g, o_star)?;
    let rankings: Vec<Vec<usize>> = sub
        .components()
        .into_iter()
        .map(|component| {
            let inside: HashSet<usize> = component.iter().copied().collect();
            let mut scored: Vec<(u32, usize)> = component
                .iter()
                .map(|&v| {
                    let ecc = sub
                        .bfs(v)
                        .iter()
                        .enumerate()
                        .filter(|(u, _)| inside.contains(u))
                        .map(|(_, d)| d.expect("component is connected"))
                        .max()
                        .unwrap_or(0);
                    (ecc, sub.orig[v])
                })
                .collect();
            scored.sort_unstable();
            scored.into_iter().map(|(_, orig)| orig).collect()
        })
        .collect();
    let picks = round_robin(rankings, n);
    Ok(NodeSet::new(pad_selection(g, o_star, picks, n)))
}

/// Leading eigenvector of a symmetric PSD matrix via power iteration with a
/// deterministic start; the returned vector has its largest-magnitude entry
/// positive.
pub fn leading_eigenvector(matrix: &[Vec<f64>]) -> Vec<f64> {
    let m = matrix.len();
    if m == 1 {
        return vec![1.0];
    }
    let mut v: Vec<f64> = (0..m).map(|i| 1.0 + 1e-4 * (i as f64 + 1.0)).collect();
    let normalize = |v: &mut Vec<f64>| {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for x in v.iter_mut() {
                *x /= norm;
            }
        }
        let pivot = v
            .iter()
            .cloned()
            .fold(0.0_f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        if pivot < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    };
    normalize(&mut v);
    for _ in 0..500 {
        let mut next = vec![0.0; m];
        for (i, row) in matrix.iter().enumerate() {
            next[i] = row.iter().zip(&v).map(|(a, b)| a * b).sum();
        }
        normalize(&mut next);
        let delta: f64 = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if delta < 1e-12 {
            break;
        }
    }
    v
}

/// NetSleuth-style baseline (fixed source count): repeatedly pick the node
/// with the largest entry of the leading eigenvector of the full-graph
/// Laplacian restricted to the remaining infected nodes, per component,
/// round-robin across components.
pub fn netsleuth_localize(g: &Graph, o_star: &Snapshot, n: usize) -> Result<NodeSet> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "must be >= 1".into(),
        });
    }
    let sub = InfectedSubgraph::build(g, o_star)?;
    let components = sub.components();
    // Per-component quota under round-robin by size order.
    let limit = n.min(sub.n());
    let mut quotas = vec![0usize; components.len()];
    let mut remaining_quota = limit;
    'outer: loop {
        for (c, component) in components.iter().enumerate() {
            if remaining_quota == 0 {
                break 'outer;
            }
            if quotas[c] < component.len() {
                quotas[c] += 1;
                remaining_quota -= 1;
            }
        }
        if quotas
            .iter()
            .zip(&components)
            .all(|(&q, c)| q == c.len())
        {
            break;
        }
    }
    let mut picks = Vec::new();
    for (component, &quota) in components.iter().zip(&quotas) {
        let mut remaining: Vec<usize> = component.clone();
        for _ in 0..quota {
            let m = remaining.len();
            let mut submatrix = vec![vec![0.0; m]; m];
            for (i, &u) in remaining.iter().enumerate() {
                submatrix[i][i] = g.degree(sub.orig[u]) as f64;
                for &v in &sub.adjacency[u] {
                    if let Some(j) = remaining.iter().position(|&w| w == v) {
                        submatrix[i][j] = -1.0;
                    }
                }
            }
            let eigvec = leading_eigenvector(&submatrix);
            let mut best = 0usize;
            for i in 1..m {
                if eigvec[i] > eigvec[best] {
                    best = i;
                }
            }
            picks.push(sub.orig[remaining[best]]);
            remaining.remove(best);
        }
    }
    Ok(NodeSet::new(pad_selection(g, o_star, picks, n)))
}
