//! Special-function kernel: log-gamma (real and complex), Pochhammer, the confluent
//! hypergeometric limit function ₀F₁, the modified Bessel function K_ν of
//! real order, and the quadrature rules they rely on.
//!
//! Every routine is a pure function of its arguments.

mod bessel;
mod gamma;
mod hypergeometric;
pub mod quadrature;

pub use bessel::{bessel_k, ln_bessel_k, meijer_g20_02_mellin_barnes};
pub use gamma::{ln_gamma_complex, ln_pochhammer, log_gamma};
pub use hypergeometric::{hyp0f1, ln_hyp0f1};

use crate::error::{Error, Result};

/// Stopping rule for series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    rel_tol: f64,
    max_terms: usize,
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::Domain(format!("rel_tol must be positive, got {rel_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { rel_tol: 1e-14, max_terms: 10_000 }
    }
}
