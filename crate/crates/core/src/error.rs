//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice size L = {0} is invalid (need L >= 2)")]
    InvalidSize(usize),

    #[error("lattice size L = {got} exceeds the limit {limit} for this oracle")]
    SizeLimit { got: usize, limit: usize },

    #[error("{kind} id {id} out of range (count {count})")]
    IndexOutOfRange {
        kind: &'static str,
        id: usize,
        count: usize,
    },

    #[error("qubit ids must be distinct, got {0} twice")]
    DuplicateQubit(usize),

    #[error("per-link energy {0} outside [-1, 1]")]
    EnergyOutOfRange(f64),

    #[error("moments produced probability {value} (violation {violation:e}); inputs inconsistent")]
    InconsistentMoments { value: f64, violation: f64 },

    #[error("class data incomplete: expected {expected} pair classes, got {got}")]
    MissingClass { expected: usize, got: usize },

    #[error("need at least {need} {what}, got {got}")]
    TooFew {
        what: &'static str,
        need: usize,
        got: usize,
    },

    #[error("beta grid must be strictly increasing and finite")]
    BadGrid,

    #[error("discrete maximum at grid boundary (index {index} of {len}); widen the beta grid")]
    BoundaryPeak { index: usize, len: usize },

    #[error("degenerate point: beta_m equals beta* exactly at N = {0}")]
    DegeneratePoint(usize),

    #[error("convergence exponent gamma = {0} must be positive")]
    NonPositiveGamma(f64),

    #[error("singular fit: {0}")]
    SingularFit(&'static str),

    #[error("measurement collector failed: {0}")]
    Collector(String),
}
