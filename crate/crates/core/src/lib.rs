//! Numerical verification toolkit for generalised `(h, s)`-convexity with a
//! substitution map `phi`, local fractional integrals of order `alpha` in
//! `(0, 1]`, and the Hermite-Hadamard-type inequality chains that connect
//! them.
//!
//! Everything here works with real-embedded semantics: a "fractal" value
//! `x^alpha` is represented by the real number `x^alpha`, order and
//! arithmetic are the ordinary real ones, and `alpha` survives as a tag that
//! selects kernels, exponents and normalisation constants. The toolkit never
//! proves an inequality; it evaluates both sides on explicit grids and
//! reports margins, so every verdict is "on the sampled grid" by
//! construction.
//!
//! Module map:
//!
//! * [`special`] - Gamma function and the truncated Mittag-Leffler series.
//! * [`rho`] - the weight family `rho_{alpha s}(t) = (t / h(t))^{alpha s}`
//!   with the catalog of `h` generators.
//! * [`expr`] - a tiny arithmetic expression parser for user-supplied
//!   functions (no general code execution).
//! * [`catalog`] - named function, substitution-map and density catalogs.
//! * [`integral`] - the three local fractional integral backends and the
//!   quadrature layer.
//! * [`report`] - link/chain report structures shared by all verifiers.
//! * [`convexity`] - the grid certifier, class taxonomy, K-functional and
//!   monotonicity check.
//! * [`hh`] - Hermite-Hadamard chains, the splitting-identity residual, the
//!   lambda-refined chain, the X-functional and its pointwise / reflection /
//!   integral bounds.
//! * [`search`] - scenario-space violation search with witness
//!   certificates.
//! * [`probability`] - fractional CDF, weighted expectation functional and
//!   the probabilistic bound chain.

pub mod catalog;
pub mod convexity;
pub mod error;
pub mod expr;
pub mod hh;
pub mod integral;
pub mod probability;
pub mod report;
pub mod rho;
pub mod search;
pub mod special;

pub use error::{Error, Result};
