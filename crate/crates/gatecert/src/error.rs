//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by state construction, decompositions and protocol runs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not Hermitian (max |H - H^dag| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (max |U^dag U - I| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("operator is not a density operator: {reason}")]
    NotDensity { reason: String },

    #[error("state vector is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("state is not a product state (min Schmidt coefficient = {min_schmidt:.3e})")]
    NotProduct { min_schmidt: f64 },

    #[error("gate does not map the given product input to a product output (min Schmidt coefficient = {min_schmidt:.3e})")]
    ImageNotProduct { min_schmidt: f64 },

    #[error("input/output pair is inconsistent with the gate: {reason}")]
    InconsistentPair { reason: String },

    #[error("POVM does not have the expected rank pattern (1, 3): {reason}")]
    RankPattern { reason: String },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("no counts recorded for the conditional frequency `{which}`")]
    ZeroCounts { which: &'static str },

    #[error("failed to load gate from {path}: {reason}")]
    GateLoad { path: String, reason: String },

    #[error("unknown gate name `{0}` (expected cnot, swap, cz, iswap or identity)")]
    UnknownGate(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Usage(String),

    #[error("consistency check failed: {0}")]
    Verification(String),

    #[error("internal verification failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
