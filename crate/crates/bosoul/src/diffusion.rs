//! Stochastic diffusion models (SI, SIR, SIS, IC), snapshots, Hamming
//! similarity and the Monte-Carlo fitness estimator for candidate source sets.

use std::fmt;
use std::path::Path;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::rng::{derive_seed, stream, Domain};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffusionModel {
    Si,
    Sir,
    Sis,
    Ic,
}

impl DiffusionModel {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "si" => Ok(Self::Si),
            "sir" => Ok(Self::Sir),
            "sis" => Ok(Self::Sis),
            "ic" => Ok(Self::Ic),
            other => Err(Error::Config(format!("unknown diffusion model {other:?}"))),
        }
    }
}

impl fmt::Display for DiffusionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Si => "si",
            Self::Sir => "sir",
            Self::Sis => "sis",
            Self::Ic => "ic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DiffusionConfig {
    pub model: DiffusionModel,
    /// Infection / activation probability per contact per step.
    pub infection_rate: f64,
    /// Recovery probability per step (SIR and SIS only).
    pub recovery_rate: f64,
    /// Hard cap on simulated steps per round.
    pub max_steps: usize,
    /// Consecutive non-improving steps before a round stops.
    pub patience: usize,
}

impl DiffusionConfig {
    pub fn new(model: DiffusionModel, infection_rate: f64, recovery_rate: f64) -> Self {
        Self {
            model,
            infection_rate,
            recovery_rate,
            max_steps: 50,
            patience: 5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.infection_rate) {
            return Err(Error::InvalidProbability {
                value: self.infection_rate,
            });
        }
        if !(0.0..=1.0).contains(&self.recovery_rate) {
            return Err(Error::InvalidProbability {
                value: self.recovery_rate,
            });
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidParameter {
                name: "max_steps",
                reason: "must be >= 1".into(),
            });
        }
        if self.patience == 0 {
            return Err(Error::InvalidParameter {
                name: "patience",
                reason: "must be >= 1".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeStatus {
    Susceptible,
    Infected,
    Recovered,
}

/// Mutable per-round simulation state.
#[derive(Debug, Clone)]
pub struct SimState {
    pub status: Vec<NodeStatus>,
    /// IC only: nodes activated in the previous step, which get their one
    /// chance to activate neighbors this step.
    pub frontier: Vec<usize>,
    /// IC only: nodes that have ever been activated.
    pub ever_active: Vec<bool>,
}

impl SimState {
    pub fn from_sources(n: usize, sources: &NodeSet) -> Self {
        let mut status = vec![NodeStatus::Susceptible; n];
        let mut ever_active = vec![false; n];
        for &s in sources.members() {
            status[s] = NodeStatus::Infected;
            ever_active[s] = true;
        }
        Self {
            status,
            frontier: sources.members().to_vec(),
            ever_active,
        }
    }
}

/// Binary node-state vector observed at one instant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    states: Vec<u8>,
}

impl Snapshot {
    pub fn new(states: Vec<u8>) -> Result<Self> {
        if states.iter().any(|&s| s > 1) {
            return Err(Error::InvalidParameter {
                name: "states",
                reason: "entries must be 0 or 1".into(),
            });
        }
        Ok(Self { states })
    }

    pub fn from_infected(n: usize, infected: &NodeSet) -> Self {
        let mut states = vec![0u8; n];
        for &v in infected.members() {
            states[v] = 1;
        }
        Self { states }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[u8] {
        &self.states
    }

    pub fn infected_nodes(&self) -> Vec<usize> {
        self.states
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| (s == 1).then_some(i))
            .collect()
    }

    pub fn infected_count(&self) -> usize {
        self.states.iter().filter(|&&s| s == 1).count()
    }

    /// CSV with `node_id,state` columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node_id,state\n");
        for (i, s) in self.states.iter().enumerate() {
            out.push_str(&format!("{i},{s}\n"));
        }
        out
    }

    /// Parse the snapshot CSV; nodes absent from the file default to state 0.
    pub fn from_csv(text: &str, n: usize) -> Result<Self> {
        let mut states = vec![0u8; n];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line == "node_id,state" {
                continue;
            }
            let mut parts = line.split(',');
            let bad = |reason: String| Error::Parse {
                line: lineno + 1,
                reason,
            };
            let id: usize = parts
                .next()
                .ok_or_else(|| bad("missing node_id".into()))?
                .trim()
                .parse()
                .map_err(|e| bad(format!("bad node_id: {e}")))?;
            let state: u8 = parts
                .next()
                .ok_or_else(|| bad("missing state".into()))?
                .trim()
                .parse()
                .map_err(|e| bad(format!("bad state: {e}")))?;
            if state > 1 {
                return Err(bad(format!("state {state} not in {{0,1}}")));
            }
            if id >= n {
                return Err(bad(format!("node id {id} out of range for {n} nodes")));
            }
            states[id] = state;
        }
        Ok(Self { states })
    }

    pub fn load_csv(path: impl AsRef<Path>, n: usize) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?, n)
    }
}

/// Advance the state by one synchronous step. Returns `true` if anything
/// changed (IC rounds end when a step activates nobody).
///
/// Infection attempts are resolved against the state at step entry; recovery
/// (SIR/SIS) is then applied to the nodes that were infected at step entry, so
/// a recovering node still gets its infection attempts for this step.
pub fn step(state: &mut SimState, g: &Graph, cfg: &DiffusionConfig, rng: &mut ChaCha8Rng) -> bool {
    let n = g.n_nodes();
    match cfg.model {
        DiffusionModel::Si | DiffusionModel::Sir | DiffusionModel::Sis => {
            let mut newly_infected = Vec::new();
            let beta = cfg.infection_rate;
            for u in 0..n {
                if state.status[u] != NodeStatus::Infected {
                    continue;
                }
                for &v in g.neighbors(u) {
                    if state.status[v] == NodeStatus::Susceptible && beta > 0.0 && rng.gen_bool(beta)
                    {
                        newly_infected.push(v);
                    }
                }
            }
            let mut recovered = Vec::new();
            if matches!(cfg.model, DiffusionModel::Sir | DiffusionModel::Sis) {
                let gamma = cfg.recovery_rate;
                for u in 0..n {
                    if state.status[u] == NodeStatus::Infected && gamma > 0.0 && rng.gen_bool(gamma)
                    {
                        recovered.push(u);
                    }
                }
            }
            let mut changed = false;
            for v in newly_infected {
                if state.status[v] == NodeStatus::Susceptible {
                    state.status[v] = NodeStatus::Infected;
                    changed = true;
                }
            }
            for u in recovered {
                state.status[u] = match cfg.model {
                    DiffusionModel::Sir => NodeStatus::Recovered,
                    DiffusionModel::Sis => NodeStatus::Susceptible,
                    _ => unreachable!(),
                };
                changed = true;
            }
            changed
        }
        DiffusionModel::Ic => {
            let beta = cfg.infection_rate;
            let mut next_frontier = Vec::new();
            for &u in &state.frontier {
                for &v in g.neighbors(u) {
                    if !state.ever_active[v] && beta > 0.0 && rng.gen_bool(beta) {
                        state.ever_active[v] = true;
                        state.status[v] = NodeStatus::Infected;
                        next_frontier.push(v);
                    }
                }
            }
            let changed = !next_frontier.is_empty();
            state.frontier = next_frontier;
            changed
        }
    }
}

/// Project a simulation state onto the binary observation: infected nodes map
/// to 1 (for IC, every node ever activated); susceptible and recovered map to 0.
pub fn snapshot_of(state: &SimState, model: DiffusionModel) -> Snapshot {
    let states = match model {
        DiffusionModel::Ic => state
            .ever_active
            .iter()
            .map(|&a| u8::from(a))
            .collect(),
        _ => state
            .status
            .iter()
            .map(|s| u8::from(*s == NodeStatus::Infected))
            .collect(),
    };
    Snapshot { states }
}

/// Number of agreeing positions: N minus the Hamming distance.
pub fn similarity(a: &Snapshot, b: &Snapshot) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.states
        .iter()
        .zip(&b.states)
        .filter(|(x, y)| x == y)
        .count())
}

/// Run `sources` forward for exactly `steps` steps and return the snapshot.
pub fn simulate_snapshot(
    g: &Graph,
    sources: &NodeSet,
    cfg: &DiffusionConfig,
    steps: usize,
    rng: &mut ChaCha8Rng,
) -> Snapshot {
    let mut state = SimState::from_sources(g.n_nodes(), sources);
    for _ in 0..steps {
        let changed = step(&mut state, g, cfg, rng);
        if cfg.model == DiffusionModel::Ic && !changed {
            break;
        }
    }
    snapshot_of(&state, cfg.model)
}

/// One simulation round: peak similarity to `o_star` over time, including the
/// source-only configuration at t = 0. Stops after `patience` consecutive
/// steps without a new peak, at `max_steps`, or (IC) when activation dies out.
fn run_round(
    g: &Graph,
    sources: &NodeSet,
    o_star: &Snapshot,
    cfg: &DiffusionConfig,
    rng: &mut ChaCha8Rng,
) -> usize {
    let mut state = SimState::from_sources(g.n_nodes(), sources);
    let mut best = similarity(&snapshot_of(&state, cfg.model), o_star).expect("length checked");
    let mut since_improvement = 0;
    for _ in 0..cfg.max_steps {
        let changed = step(&mut state, g, cfg, rng);
        let sim = similarity(&snapshot_of(&state, cfg.model), o_star).expect("length checked");
        if sim > best {
            best = sim;
            since_improvement = 0;
        } else {
            since_improvement += 1;
            if since_improvement >= cfg.patience {
                break;
            }
        }
        if cfg.model == DiffusionModel::Ic && !changed {
            break;
        }
    }
    best
}

/// Monte-Carlo estimate of a candidate set's fitness.
#[derive(Debug, Clone, Copy)]
pub struct TauEstimate {
    /// Mean over rounds of the per-round peak similarity.
    pub mean: f64,
    /// Unbiased sample variance of the per-round peaks (0 for a single round).
    pub variance: f64,
    pub rounds: usize,
}

/// Estimate τ(s, o*): expected peak similarity between simulated spreads from
/// `s` and the observed snapshot. Rounds run in parallel on seeds derived from
/// `(seed, round)`, so the result is independent of scheduling.
pub fn estimate_tau(
    g: &Graph,
    sources: &NodeSet,
    o_star: &Snapshot,
    cfg: &DiffusionConfig,
    rounds: usize,
    seed: u64,
) -> Result<TauEstimate> {
    cfg.validate()?;
    if sources.is_empty() {
        return Err(Error::InvalidParameter {
            name: "sources",
            reason: "must be nonempty".into(),
        });
    }
    if rounds == 0 {
        return Err(Error::InvalidParameter {
            name: "rounds",
            reason: "must be >= 1".into(),
        });
    }
    if o_star.len() != g.n_nodes() {
        return Err(Error::DimensionMismatch {
            expected: g.n_nodes(),
            got: o_star.len(),
        });
    }
    for &s in sources.members() {
        if s >= g.n_nodes() {
            return Err(Error::InvalidNodeId {
                id: s,
                n_nodes: g.n_nodes(),
            });
        }
    }
    let peaks: Vec<f64> = (0..rounds)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream(
                derive_seed(seed, Domain::TauEvaluation, 0),
                Domain::SimulationRound,
                r as u64,
            );
            run_round(g, sources, o_star, cfg, &mut rng) as f64
        })
        .collect();
    let mean = peaks.iter().sum::<f64>() / rounds as f64;
    let variance = if rounds > 1 {
        peaks.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (rounds - 1) as f64
    } else {
        0.0
    };
    Ok(TauEstimate {
        mean,
        variance,
        rounds,
    })
}
