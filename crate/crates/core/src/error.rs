use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {max_terms} terms")]
    Convergence { max_terms: usize },

    #[error("level {n} lies outside the valid spectrum range (n <= {max})")]
    SpectrumRange { n: usize, max: usize },

    #[error("degenerate spectrum: e_{n} = {value} (levels above the ground state must be positive)")]
    DegenerateSpectrum { n: usize, value: f64 },

    #[error("shape-invariance chain is not increasing at step {step}: R = {remainder}")]
    InvalidChain { step: usize, remainder: f64 },

    #[error("coherent states belong to different spectrum models")]
    IncompatibleModels,

    #[error("coherent states cannot be built on a truncated spectrum (n_max = {n_max})")]
    TruncatedSpectrum { n_max: usize },

    #[error("weight series still carries tail mass after {cap} terms")]
    TruncationCap { cap: usize },

    #[error("time grid too coarse: {samples_per_period:.2} samples per classical period (need >= 10)")]
    Resolution { samples_per_period: f64 },

    #[error("grid error: {0}")]
    Grid(String),

    #[error("quadrature did not converge (estimated relative error {estimate:e})")]
    Quadrature { estimate: f64 },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
