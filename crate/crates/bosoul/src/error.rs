use thiserror::Error;

/// Errors surfaced by graph construction, spectral analysis, simulation and
/// the localization pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid node id {id} for graph with {n_nodes} nodes")]
    InvalidNodeId { id: usize, n_nodes: usize },

    #[error("invalid probability {value}: must lie in [0, 1]")]
    InvalidProbability { value: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("graph generation failed: no connected graph after {attempts} attempts")]
    ConnectivityExhausted { attempts: usize },

    #[error("empty graph")]
    EmptyGraph,

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("candidate enumeration would produce {count} sets, above the limit {limit}; reduce the pool size")]
    CandidateLimit { count: u128, limit: u128 },

    #[error("all candidates are excluded from sampling")]
    AllCandidatesExcluded,

    #[error("covariance factorization failed even with jitter up to {max_jitter}")]
    Factorization { max_jitter: f64 },

    #[error("metric undefined: node {from} cannot reach node {to}")]
    Unreachable { from: usize, to: usize },

    #[error("ground truth generation failed: {reason}")]
    GroundTruth { reason: String },

    #[error("basis cache rejected: {reason}")]
    BasisCache { reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
