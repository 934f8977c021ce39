use thiserror::Error;

/// Errors raised across the crate.
///
/// Numeric payloads are stored as `f64` regardless of the working scalar.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid unit system: {0}")]
    InvalidUnits(String),

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("invalid screening parameters: {0}")]
    InvalidScreening(String),

    #[error("radius must be positive (Coulomb singularity at the origin), got r = {0}")]
    NonPositiveRadius(f64),

    #[error("power-series expansion is only available for g = 1, got g = {0}")]
    UnsupportedExpansion(f64),

    #[error("{what} is not available for n = {n}")]
    UnsupportedState { n: u32, what: &'static str },

    #[error("radial moment <r^{k}> diverges for l = {ell}")]
    DivergentMoment { k: i32, ell: u32 },

    #[error("quadrature did not reach tolerance: best estimate {best} with error estimate {error_estimate}")]
    ToleranceNotMet { best: f64, error_estimate: f64 },

    #[error(
        "numeric superpotential is singular at the {n} node(s) of the unperturbed state; use the closed form instead"
    )]
    NodeSingularity { n: u32 },

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("eigenvalue search hit the iteration limit; best bracket [{lo}, {hi}]")]
    IterationLimit { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
