use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("window longer than sample: k = {k}, sample length = {len}")]
    WindowLongerThanSample { k: usize, len: usize },

    #[error("incompatible samples: point dimension {left} vs {right}")]
    IncompatibleSamples { left: usize, right: usize },

    #[error("invalid order: k = {0}, must be >= 1")]
    InvalidOrder(usize),

    #[error("invalid weight scheme: {0}")]
    InvalidWeightScheme(String),

    #[error("oracle requires discrete alphabet")]
    OracleRequiresDiscreteAlphabet,

    #[error("invalid sample `{id}`: {reason}")]
    InvalidSample { id: String, reason: String },

    #[error("epsilon must be in (0,1), got {0}")]
    EpsilonOutOfRange(f64),

    #[error("separation must exceed threshold: separation = {separation}, epsilon = {epsilon}")]
    SeparationTooSmall { separation: f64, epsilon: f64 },

    #[error("invalid bound parameters: {0}")]
    InvalidBoundParams(String),

    #[error("more clusters than samples: k = {k}, samples = {n}")]
    MoreClustersThanSamples { k: usize, n: usize },

    #[error("invalid clustering: {0}")]
    InvalidClustering(String),

    #[error("clustering id mismatch: {0}")]
    ClusteringIdMismatch(String),

    #[error("non-stochastic transition matrix: {0}")]
    NonStochasticMatrix(String),

    #[error("invalid generator spec: {0}")]
    InvalidGeneratorSpec(String),

    #[error("duplicate sample id `{0}`")]
    DuplicateId(String),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("invalid experiment spec: {0}")]
    InvalidExperimentSpec(String),

    #[error("sample id `{0}` not found")]
    UnknownSampleId(String),

    #[error("malformed {what}: {reason}")]
    Malformed { what: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
