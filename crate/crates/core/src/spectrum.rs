//! Energy-spectrum models n ↦ Eₙ, their dimensionless forms eₙ = (Eₙ − E₀)/ω,
//! and a generic shape-invariance chain.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Anything that supplies dimensionless levels e₀ = 0 < e₁ < e₂ < …
pub trait Spectrum {
    /// Dimensionless level eₙ.
    fn level(&self, n: usize) -> Result<f64>;

    /// Largest admissible level index for truncated spectra.
    fn max_level(&self) -> Option<usize> {
        None
    }
}

/// Spectrum given by an arbitrary closure; handy for synthetic models.
pub struct FnSpectrum<F>(pub F);

impl<F: Fn(usize) -> f64> Spectrum for FnSpectrum<F> {
    fn level(&self, n: usize) -> Result<f64> {
        Ok((self.0)(n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelKind {
    QuasiHarmonic,
    Morse,
    MathewsLakshmanan,
}

/// Built-in spectrum models.
///
/// * `QuasiHarmonic`: Eₙ = α[(n + ½) + υ² n(n+1)], eₙ = n[1 + υ²(n+1)], ω = α.
/// * `Morse`: eₙ = Eₙ = nμ², ω = 1.
/// * `MathewsLakshmanan`: Eₙ = α[(n + ½) − (λ̃/2) n(n+1)]; truncated for λ̃ > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpectrumModel {
    QuasiHarmonic { alpha: f64, upsilon: f64 },
    Morse { mu: f64 },
    MathewsLakshmanan { alpha: f64, lambda_tilde: f64 },
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be a finite positive number, got {v}")))
    }
}

impl SpectrumModel {
    pub fn quasi_harmonic(alpha: f64, upsilon: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        if !(upsilon >= 0.0) || !upsilon.is_finite() {
            return Err(Error::Domain(format!("upsilon must be finite and >= 0, got {upsilon}")));
        }
        Ok(Self::QuasiHarmonic { alpha, upsilon })
    }

    pub fn morse(mu: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        Ok(Self::Morse { mu })
    }

    pub fn mathews_lakshmanan(alpha: f64, lambda_tilde: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        if !lambda_tilde.is_finite() {
            return Err(Error::Domain(format!("lambda_tilde must be finite, got {lambda_tilde}")));
        }
        Ok(Self::MathewsLakshmanan { alpha, lambda_tilde })
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            Self::QuasiHarmonic { .. } => ModelKind::QuasiHarmonic,
            Self::Morse { .. } => ModelKind::Morse,
            Self::MathewsLakshmanan { .. } => ModelKind::MathewsLakshmanan,
        }
    }

    /// Parameter values outside the explored range. They are accepted, but
    /// callers should surface these messages.
    pub fn warnings(&self) -> Vec<String> {
        match *self {
            Self::QuasiHarmonic { upsilon, .. } if upsilon > 2.0 => {
                vec![format!("upsilon = {upsilon} lies outside [0, 2]")]
            }
            Self::Morse { mu } if mu > 4.0 => vec![format!("mu = {mu} lies outside (0, 4]")],
            _ => Vec::new(),
        }
    }

    /// The energy scale ω(α₁) converting eₙ to energy differences.
    pub fn omega(&self) -> f64 {
        match *self {
            Self::QuasiHarmonic { alpha, .. } | Self::MathewsLakshmanan { alpha, .. } => alpha,
            Self::Morse { .. } => 1.0,
        }
    }

    pub fn ground_energy(&self) -> f64 {
        match *self {
            Self::QuasiHarmonic { alpha, .. } | Self::MathewsLakshmanan { alpha, .. } => 0.5 * alpha,
            Self::Morse { .. } => 0.0,
        }
    }

    /// Largest valid n. Only the Mathews–Lakshmanan model with λ̃ > 0 is
    /// truncated: levels are kept while e_{n+1} > eₙ, i.e. n < 1/λ̃ − 1.
    pub fn n_max_valid(&self) -> Option<usize> {
        match *self {
            Self::MathewsLakshmanan { lambda_tilde, .. } if lambda_tilde > 0.0 => {
                let bound = 1.0 / lambda_tilde - 1.0;
                if bound <= 0.0 {
                    return Some(0);
                }
                let mut n = bound.floor() as usize;
                // e_{n+1} − e_n = 1 − λ̃(n+1) must stay strictly positive
                while n > 0 && 1.0 - lambda_tilde * (n as f64 + 1.0) <= 0.0 {
                    n -= 1;
                }
                Some(n)
            }
            _ => None,
        }
    }

    /// Coefficients (c₁, c₂) of the continuous extension e(n) = c₁ n + c₂ n².
    pub fn level_polynomial(&self) -> (f64, f64) {
        match *self {
            Self::QuasiHarmonic { upsilon, .. } => {
                let u2 = upsilon * upsilon;
                (1.0 + u2, u2)
            }
            Self::Morse { mu } => (mu * mu, 0.0),
            Self::MathewsLakshmanan { lambda_tilde, .. } => {
                (1.0 - 0.5 * lambda_tilde, -0.5 * lambda_tilde)
            }
        }
    }

    /// e(n) for real n, the interpolating polynomial of the levels.
    pub fn level_continuous(&self, n: f64) -> f64 {
        let (c1, c2) = self.level_polynomial();
        n * (c1 + c2 * n)
    }

    /// The quasi-harmonic parameters (α, υ) when the model has that spectrum.
    /// Mathews–Lakshmanan with λ̃ ≤ 0 maps onto it with υ² = −λ̃/2.
    pub fn as_quasi_harmonic(&self) -> Option<(f64, f64)> {
        match *self {
            Self::QuasiHarmonic { alpha, upsilon } => Some((alpha, upsilon)),
            Self::MathewsLakshmanan { alpha, lambda_tilde } if lambda_tilde <= 0.0 => {
                Some((alpha, (-0.5 * lambda_tilde).sqrt()))
            }
            _ => None,
        }
    }

    fn check_range(&self, n: usize) -> Result<()> {
        match self.n_max_valid() {
            Some(max) if n > max => Err(Error::SpectrumRange { n, max }),
            _ => Ok(()),
        }
    }

    /// Dimensionless level eₙ.
    pub fn e_n(&self, n: usize) -> Result<f64> {
        self.check_range(n)?;
        let nf = n as f64;
        Ok(match *self {
            Self::QuasiHarmonic { upsilon, .. } => nf * (1.0 + upsilon * upsilon * (nf + 1.0)),
            Self::Morse { mu } => nf * mu * mu,
            Self::MathewsLakshmanan { lambda_tilde, .. } => {
                nf * (1.0 - 0.5 * lambda_tilde * (nf + 1.0))
            }
        })
    }

    /// Energy Eₙ = ω eₙ + E₀, written in the form the models are quoted in.
    pub fn energy(&self, n: usize) -> Result<f64> {
        self.check_range(n)?;
        let nf = n as f64;
        Ok(match *self {
            Self::QuasiHarmonic { alpha, upsilon } => {
                // μ = 2υ, μ²/4 = υ²
                let mu = 2.0 * upsilon;
                alpha * ((nf + 0.5) + 0.25 * mu * mu * nf * (nf + 1.0))
            }
            Self::Morse { mu } => nf * mu * mu,
            Self::MathewsLakshmanan { alpha, lambda_tilde } => {
                alpha * ((nf + 0.5) - 0.5 * lambda_tilde * nf * (nf + 1.0))
            }
        })
    }
}

impl Spectrum for SpectrumModel {
    fn level(&self, n: usize) -> Result<f64> {
        self.e_n(n)
    }

    fn max_level(&self) -> Option<usize> {
        self.n_max_valid()
    }
}

impl fmt::Display for SpectrumModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::QuasiHarmonic { alpha, upsilon } => {
                write!(f, "quasi-harmonic(alpha={alpha}, upsilon={upsilon})")
            }
            Self::Morse { mu } => write!(f, "morse(mu={mu})"),
            Self::MathewsLakshmanan { alpha, lambda_tilde } => {
                write!(f, "mathews-lakshmanan(alpha={alpha}, lambda_tilde={lambda_tilde})")
            }
        }
    }
}

type ParamFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Spectrum generated by a shape-invariant partner chain:
/// Eₙ = E₀ + Σ_{i=1}^{n} R(αᵢ), with α_{i+1} = f(αᵢ).
pub struct ShapeInvarianceChain {
    remainder: ParamFn,
    param_map: ParamFn,
    alpha_1: f64,
    ground_energy: f64,
}

impl ShapeInvarianceChain {
    pub fn new(
        remainder: impl Fn(f64) -> f64 + Send + Sync + 'static,
        param_map: impl Fn(f64) -> f64 + Send + Sync + 'static,
        alpha_1: f64,
        ground_energy: f64,
    ) -> Self {
        Self {
            remainder: Box::new(remainder),
            param_map: Box::new(param_map),
            alpha_1,
            ground_energy,
        }
    }

    /// Harmonic ladder: R = ω, f = identity, E₀ = ω/2.
    pub fn harmonic(omega: f64) -> Self {
        Self::new(move |_| omega, |a| a, 0.0, 0.5 * omega)
    }

    /// Dimensionless quasi-harmonic chain: R(α) = 1 + 2υ²α, f(α) = α + 1, α₁ = 1.
    pub fn quasi_harmonic(upsilon: f64) -> Self {
        let u2 = upsilon * upsilon;
        Self::new(move |a| 1.0 + 2.0 * u2 * a, |a| a + 1.0, 1.0, 0.0)
    }

    /// Morse-like chain with a constant remainder μ².
    pub fn morse(mu: f64) -> Self {
        let r = mu * mu;
        Self::new(move |_| r, |a| a, 0.0, 0.0)
    }

    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    /// Energies E₀ … E_{n_max}.
    pub fn spectrum(&self, n_max: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(n_max + 1);
        let mut energy = self.ground_energy;
        let mut alpha = self.alpha_1;
        out.push(energy);
        for step in 1..=n_max {
            let r = (self.remainder)(alpha);
            if !(r > 0.0) || !r.is_finite() {
                return Err(Error::InvalidChain { step, remainder: r });
            }
            energy += r;
            out.push(energy);
            alpha = (self.param_map)(alpha);
        }
        Ok(out)
    }

    pub fn si_energy(&self, n: usize) -> Result<f64> {
        Ok(*self.spectrum(n)?.last().expect("spectrum always holds E0"))
    }
}

impl fmt::Debug for ShapeInvarianceChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ShapeInvarianceChain")
            .field("alpha_1", &self.alpha_1)
            .field("ground_energy", &self.ground_energy)
            .finish_non_exhaustive()
    }
}
