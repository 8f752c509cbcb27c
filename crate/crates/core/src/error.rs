use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("value out of representable range: {0}")]
    Range(String),

    #[error("not an Appell generator: leading coefficient Q(0) must be nonzero")]
    NotAppellGenerator,

    #[error("normalization undefined: Q(1) = {0} must be positive")]
    NormalizationUndefined(f64),

    #[error("series built over different Dunkl parameters (mu = {0} vs mu = {1})")]
    ContextMismatch(f64, f64),

    #[error("family positivity is unverified; enable the override to evaluate it anyway")]
    UnverifiedPositivity,

    #[error("truncation failure: cap of {cap} weights reached with tail mass {tail_mass:e}")]
    TruncationFailure {
        cap: usize,
        tail_mass: f64,
        partial: Vec<f64>,
    },

    #[error("positivity violation: weight {index} = {weight:e}")]
    PositivityViolation { index: usize, weight: f64 },

    #[error("function is not finite at node {node} (index {index})")]
    NonFiniteValue { index: usize, node: f64 },

    #[error("formula transcription error: {0}")]
    Transcription(String),

    #[error("configuration error: {0}")]
    Configuration(String),
}
