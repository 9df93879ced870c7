//! Error type shared by every module in the crate.

/// Crate-wide error enumeration.
///
/// `Domain` covers argument-range violations detected up front (a
/// non-positive Gamma argument, `s = 0` where `1/s` is needed, a degenerate
/// interval). `Evaluation` means a callable produced a non-finite value at
/// an identified abscissa during quadrature or grid evaluation.
/// `Convergence` carries the partial sum so a caller can still inspect how
/// far the series got.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated series hit its term cap before meeting the tolerance.
    #[error("series did not converge after {terms} terms (partial sum {partial})")]
    Convergence { terms: usize, partial: f64 },

    /// A callable returned NaN or infinity at the given point.
    #[error("evaluation error at {point}: {what}")]
    Evaluation { point: f64, what: String },

    /// A structural hypothesis required by the operation does not hold.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// A name did not resolve against the relevant catalog.
    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),

    /// A user expression failed to parse.
    #[error("expression parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
