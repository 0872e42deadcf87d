//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point lies outside the closed unit square")]
    OutsideSquare,

    #[error("point is removed from the surface ({0})")]
    RemovedPoint(String),

    #[error("point is not a canonical representative")]
    NotCanonical,

    #[error("point is not in the interior of a glued edge")]
    NotEdgeInterior,

    #[error("operation requires an interior point")]
    NotInterior,

    #[error("non-dyadic coordinate lies exactly on the boundary")]
    NonDyadicBoundary,

    #[error("classification undecided after {cap} digits of precision")]
    PrecisionExhausted { cap: u32 },

    #[error(
        "digit rule requires non-terminating expansions; use the piecewise map on dyadic points"
    )]
    TerminatingStream,

    #[error("stream comparison undecided within the precision budget")]
    ComparisonUndecided,

    #[error("increment divergence violated at index {index}: s_{next} - s_{index} = {increment} < {required}")]
    DivergenceViolation {
        index: u64,
        next: u64,
        increment: u64,
        required: u64,
    },

    #[error("invalid sequence family: {0}")]
    InvalidSequence(String),

    #[error("horizon {horizon} is below the witness index {witness} for threshold {threshold}")]
    HorizonBelowWitness {
        horizon: u64,
        witness: u64,
        threshold: u64,
    },

    #[error("the two points coincide as canonical representatives")]
    SamePoint,

    #[error("parameter {name} = {value} outside supported range [{min}, {max}]")]
    ParameterRange {
        name: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error(
        "separation certification inconclusive for {count} orbit pair(s); raise precision or depth"
    )]
    Inconclusive { count: usize },

    #[error("stabilizer proxy failed: expansion is periodic with period {period}")]
    PeriodicExpansion { period: u32 },

    #[error("sequence fails divergence spot-check: {0}")]
    DivergenceCheckFailed(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code for the CLI error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::OutsideSquare => "outside_square",
            Error::RemovedPoint(_) => "removed_point",
            Error::NotCanonical => "not_canonical",
            Error::NotEdgeInterior => "not_edge_interior",
            Error::NotInterior => "not_interior",
            Error::NonDyadicBoundary => "non_dyadic_boundary",
            Error::PrecisionExhausted { .. } => "precision_exhausted",
            Error::TerminatingStream => "terminating_stream",
            Error::ComparisonUndecided => "comparison_undecided",
            Error::DivergenceViolation { .. } => "divergence_violation",
            Error::InvalidSequence(_) => "invalid_sequence",
            Error::HorizonBelowWitness { .. } => "horizon_below_witness",
            Error::SamePoint => "same_point",
            Error::ParameterRange { .. } => "parameter_range",
            Error::Inconclusive { .. } => "inconclusive",
            Error::PeriodicExpansion { .. } => "periodic_expansion",
            Error::DivergenceCheckFailed(_) => "divergence_check_failed",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }

    /// Inconclusive certification is a distinct outcome, not a failure.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::Inconclusive { .. } | Error::ComparisonUndecided
        )
    }
}
