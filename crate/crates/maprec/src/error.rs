//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the series ring, rational-function layer, curve
/// construction, the recursion engine and count extraction.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Two series built over different weight configurations were combined.
    #[error("weight configuration mismatch: {0}")]
    ConfigMismatch(String),

    /// Inversion of a series whose constant term is zero.
    #[error("series is not a unit (constant term is zero)")]
    NonUnit,

    /// Square root of a series whose constant term is not one.
    #[error("square root requires constant term 1, found {0}")]
    SqrtBranch(String),

    /// A coefficient beyond the computed order of a local expansion was
    /// requested.
    #[error(
        "order deficit in local expansion: requested exponent {requested}, known through {known}"
    )]
    OrderDeficit { requested: i32, known: i32 },

    /// The leading coefficient of a local expansion is not invertible.
    #[error("leading coefficient of local expansion is not a unit")]
    NonUnitLeading,

    /// Evaluation of a rational function at one of its poles.
    #[error("evaluation point {0} is a pole")]
    PoleAtEvaluation(String),

    /// Substitution requires a denominator that is a pure power of z.
    #[error("operation requires a denominator free of (z-1) and (z+1) factors")]
    DenominatorNotZPower,

    /// Invalid weight configuration data.
    #[error("invalid weight configuration: {0}")]
    InvalidConfig(String),

    /// Invalid model/weight combination in curve construction.
    #[error("invalid model/weight combination: {0}")]
    InvalidModel(String),

    /// A stable-only operation was called on an unstable topology.
    #[error("(g, n) = ({g}, {n}) is unstable; use the disk (g=0, n=1) or cylinder (g=0, n=2) extraction instead")]
    UnstableTopology { g: u32, n: u32 },

    /// An unstable-only operation was called on a stable topology.
    #[error("(g, n) = ({g}, {n}) is stable; use the stable-form extraction")]
    StableTopology { g: u32, n: u32 },

    /// The kernel denominator vanished identically.
    #[error("degenerate curve: kernel denominator vanishes identically at {0}")]
    DegenerateCurve(String),

    /// Requested truncation cannot show any nonzero coefficient.
    #[error("truncation {trunc} is insufficient: the first possible nonzero coefficient of this table has total degree {min_degree}")]
    TruncationInsufficient { trunc: u32, min_degree: u32 },

    /// A count coefficient failed the integrality invariant.
    #[error("non-integer count coefficient: {0}")]
    NonIntegerCount(String),

    /// Invalid request parameters (lengths, genus, …).
    #[error("invalid request: {0}")]
    InvalidRequest(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
