//! Position-space side of the quasi-harmonic position-dependent-mass
//! oscillator: μ-deformed Hermite polynomials, eigenfunctions on the open
//! interval |ϱ| < 1/μ, a finite-difference Hamiltonian residual and the
//! density of a time-evolved coherent state.
//!
//! Deformation parameter. With ϱ = x√(2α) and λ = μ√(2α), the Hamiltonian
//! ¼[−(1−λ²x²)∂ₓ² + 2λ²x∂ₓ + 4α²x²/(1−λ²x²)] has eigenfunctions
//! Hₙ(ϱ,μ)(1−μ²ϱ²)^{1/(2μ²)} with eigenvalues α[(n+½) + (μ²/2)n(n+1)].
//! Matching α[(n+½) + υ²n(n+1)] requires μ² = 2υ², which is what
//! [`deformation_mu`] returns.

use num_complex::Complex64;

use crate::coherent::CoherentState;
use crate::error::{Error, Result};
use crate::specfun::quadrature::simpson;
use crate::spectrum::SpectrumModel;

/// Default number of grid points (≡ 1 mod 4, so Simpson also runs at 2h).
pub const DEFAULT_POINTS: usize = 4001;

/// Minimum grid size accepted by the residual check.
pub const MIN_RESIDUAL_POINTS: usize = 2000;

/// Accepted Richardson estimate of the Simpson normalisation error.
const QUADRATURE_TOL: f64 = 1e-6;

/// Dense coefficients in ascending powers of ϱ.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialRep {
    pub coeffs: Vec<f64>,
}

impl PolynomialRep {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Vec<f64> {
        self.coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
    }
}

/// Hₙ(ϱ, μ) = (−1)ⁿ[1−μ²ϱ²]^{−1/μ²} dⁿ/dϱⁿ[1−μ²ϱ²]^{1/μ²+n}, built from
/// p₀ = 1, p_{k+1} = (1−μ²ϱ²)p′ₖ − 2μ²(s−k)ϱpₖ with s = 1/μ² + n.
pub fn modified_hermite(n: usize, mu: f64) -> Result<PolynomialRep> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Domain(format!("mu must be finite and > 0, got {mu}")));
    }
    let mu2 = mu * mu;
    let s = 1.0 / mu2 + n as f64;
    let mut p = vec![1.0];
    for k in 0..n {
        let dp = PolynomialRep { coeffs: p.clone() }.derivative();
        let mut next = vec![0.0; p.len() + 1];
        for (i, c) in dp.iter().enumerate() {
            next[i] += c;
            next[i + 2] -= mu2 * c;
        }
        let factor = 2.0 * mu2 * (s - k as f64);
        for (i, c) in p.iter().enumerate() {
            next[i + 1] -= factor * c;
        }
        p = next;
    }
    if n % 2 == 1 {
        p.iter_mut().for_each(|c| *c = -*c);
    }
    Ok(PolynomialRep { coeffs: p })
}

/// μ = √2 υ for a quasi-harmonic model (see the module notes).
pub fn deformation_mu(model: &SpectrumModel) -> Result<f64> {
    match model.as_quasi_harmonic() {
        Some((_, u)) if u > 0.0 => Ok(std::f64::consts::SQRT_2 * u),
        Some(_) => Err(Error::Domain("eigenfunctions need upsilon > 0".into())),
        None => Err(Error::Unsupported(format!("eigenfunctions are only available for quasi-harmonic models, got {model}"))),
    }
}

/// Uniform grid strictly inside (−1/μ, 1/μ), or a symmetric window of it.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    mu: f64,
    points: Vec<f64>,
    h: f64,
    margin: f64,
}

impl GridSpec {
    /// `n_points` samples on [−(1/μ − ε), 1/μ − ε].
    pub fn new(mu: f64, n_points: usize, margin: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::Domain(format!("mu must be finite and > 0, got {mu}")));
        }
        if !(margin > 0.0) || margin >= 1.0 / mu {
            return Err(Error::Grid(format!("margin must lie in (0, 1/mu), got {margin}")));
        }
        Self::window(mu, 1.0 / mu - margin, n_points)
    }

    /// 4001 points with margin ε = 10⁻⁶/μ.
    pub fn default_for(mu: f64) -> Result<Self> {
        Self::new(mu, DEFAULT_POINTS, 1e-6 / mu)
    }

    /// `n_points` samples on [−L, L] with L < 1/μ. Useful when the functions
    /// of interest are negligible well before the singular points, as for
    /// μ → 0.
    pub fn window(mu: f64, half_width: f64, n_points: usize) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::Domain(format!("mu must be finite and > 0, got {mu}")));
        }
        if !(half_width > 0.0) || half_width * mu >= 1.0 {
            return Err(Error::Grid(format!("half-width {half_width} must lie in (0, 1/mu)")));
        }
        if n_points < 5 || n_points % 4 != 1 {
            return Err(Error::Grid(format!("need n_points >= 5 with n_points = 1 (mod 4), got {n_points}")));
        }
        let h = 2.0 * half_width / (n_points - 1) as f64;
        let points = (0..n_points).map(|i| -half_width + i as f64 * h).collect();
        Ok(Self { mu, points, h, margin: 1.0 / mu - half_width })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    /// Simpson integral of samples on this grid.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        simpson(values, self.h)
    }

    fn integrate_coarse(&self, values: &[f64]) -> f64 {
        let coarse: Vec<f64> = values.iter().step_by(2).copied().collect();
        simpson(&coarse, 2.0 * self.h)
    }
}

/// Samples of a real function on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub x: Vec<f64>,
    pub values: Vec<f64>,
    /// Richardson estimate of the relative normalisation error.
    pub quadrature_estimate: f64,
}

/// ψ₀ … ψ_{n_max} for deformation μ on `grid`, each normalised by Simpson's
/// rule so that ∫ψₙ² dϱ = 1.
///
/// Evaluation uses Hₙ(ϱ,μ) ∝ C_n^{(1/μ²+½)}(μϱ), with the Gegenbauer
/// polynomials scaled to Ĉₖ(1) = 1 so the recurrence stays bounded by 1.
pub fn eigenfunctions_mu(n_max: usize, mu: f64, grid: &GridSpec) -> Result<Vec<SampledFunction>> {
    let psis = normalised_eigenfunctions(n_max, mu, grid)?;
    if let Some(bad) = psis.iter().find(|p| p.quadrature_estimate > QUADRATURE_TOL) {
        return Err(Error::Quadrature { estimate: bad.quadrature_estimate });
    }
    Ok(psis)
}

/// As [`eigenfunctions_mu`] but leaves judging the estimates to the caller.
fn normalised_eigenfunctions(n_max: usize, mu: f64, grid: &GridSpec) -> Result<Vec<SampledFunction>> {
    if (mu - grid.mu).abs() > 1e-15 * mu {
        return Err(Error::Grid(format!("grid was built for mu = {}, not {mu}", grid.mu)));
    }
    let mu2 = mu * mu;
    let lambda = 1.0 / mu2 + 0.5;
    let len = grid.points.len();
    let mut raw = vec![vec![0.0; len]; n_max + 1];
    for (i, &rho) in grid.points.iter().enumerate() {
        let weight = ((-mu2 * rho * rho).ln_1p() / (2.0 * mu2)).exp();
        let x = mu * rho;
        let (mut prev, mut cur) = (0.0, 1.0);
        raw[0][i] = weight;
        for (k, row) in raw.iter_mut().enumerate().skip(1) {
            let kf = k as f64;
            let next = (2.0 * x * (kf + lambda - 1.0) * cur - (kf - 1.0) * prev) / (kf + 2.0 * lambda - 1.0);
            prev = cur;
            cur = next;
            row[i] = cur * weight;
        }
    }
    raw.into_iter()
        .map(|values| {
            let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
            let fine = grid.integrate(&sq);
            let coarse = grid.integrate_coarse(&sq);
            let estimate = ((fine - coarse) / 15.0 / fine).abs();
            if !(fine > 0.0) || !fine.is_finite() {
                return Err(Error::Quadrature { estimate });
            }
            let scale = 1.0 / fine.sqrt();
            Ok(SampledFunction {
                x: grid.points.clone(),
                values: values.iter().map(|v| v * scale).collect(),
                quadrature_estimate: estimate,
            })
        })
        .collect()
}

/// ψₙ(ϱ) = 𝒩ₙ Hₙ(ϱ,μ)(1−μ²ϱ²)^{1/(2μ²)} for deformation μ.
pub fn eigenfunction_mu(n: usize, mu: f64, grid: &GridSpec) -> Result<SampledFunction> {
    Ok(eigenfunctions_mu(n, mu, grid)?.pop().expect("n_max + 1 functions"))
}

/// Eigenfunctions ψ₀ … ψ_{n_max} of a quasi-harmonic model.
pub fn eigenfunctions(n_max: usize, model: &SpectrumModel, grid: &GridSpec) -> Result<Vec<SampledFunction>> {
    eigenfunctions_mu(n_max, deformation_mu(model)?, grid)
}

/// Eigenfunction ψₙ of a quasi-harmonic model.
pub fn eigenfunction(n: usize, model: &SpectrumModel, grid: &GridSpec) -> Result<SampledFunction> {
    eigenfunction_mu(n, deformation_mu(model)?, grid)
}

/// Finite-difference stencil for the residual check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    /// Three-point, O(h²).
    Second,
    /// Five-point, O(h⁴).
    Fourth,
}

/// ‖Ĥψₙ − Eₙψₙ‖₂/‖ψₙ‖₂ with the five-point stencil.
pub fn hamiltonian_residual(n: usize, model: &SpectrumModel, grid: &GridSpec) -> Result<f64> {
    hamiltonian_residual_with(n, model, grid, Stencil::Fourth)
}

/// Applies Ĥ = ¼[−(1−λ²x²)∂ₓ² + 2λ²x∂ₓ + 4α²x²/(1−λ²x²)] in the physical
/// coordinate x = ϱ/√(2α) and compares with Eₙ from the spectrum. Norms are
/// taken over the interior points where the stencil fits.
pub fn hamiltonian_residual_with(n: usize, model: &SpectrumModel, grid: &GridSpec, stencil: Stencil) -> Result<f64> {
    let (alpha, _) = model
        .as_quasi_harmonic()
        .ok_or_else(|| Error::Unsupported(format!("residual needs a quasi-harmonic model, got {model}")))?;
    if grid.points.len() < MIN_RESIDUAL_POINTS {
        return Err(Error::Grid(format!("residual needs >= {MIN_RESIDUAL_POINTS} points, got {}", grid.points.len())));
    }
    let mu = deformation_mu(model)?;
    let psi = eigenfunction_mu(n, mu, grid)?.values;
    let energy = model.energy(n)?;
    let scale = (2.0 * alpha).sqrt();
    let lambda = mu * scale;
    let h = grid.h / scale;

    let reach = match stencil {
        Stencil::Second => 1,
        Stencil::Fourth => 2,
    };
    let mut num = 0.0;
    let mut den = 0.0;
    for i in reach..psi.len() - reach {
        let x = grid.points[i] / scale;
        let (d1, d2) = match stencil {
            Stencil::Second => (
                (psi[i + 1] - psi[i - 1]) / (2.0 * h),
                (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h),
            ),
            Stencil::Fourth => (
                (-psi[i + 2] + 8.0 * psi[i + 1] - 8.0 * psi[i - 1] + psi[i - 2]) / (12.0 * h),
                (-psi[i + 2] + 16.0 * psi[i + 1] - 30.0 * psi[i] + 16.0 * psi[i - 1] - psi[i - 2]) / (12.0 * h * h),
            ),
        };
        let s = 1.0 - lambda * lambda * x * x;
        let h_psi = 0.25 * (-s * d2 + 2.0 * lambda * lambda * x * d1 + 4.0 * alpha * alpha * x * x / s * psi[i]);
        if !h_psi.is_finite() {
            return Err(Error::Grid(format!("operator blew up at x = {x}; increase the margin")));
        }
        num += (h_psi - energy * psi[i]).powi(2);
        den += psi[i] * psi[i];
    }
    Ok((num / den).sqrt())
}

/// |Σₙ cₙ e^{−i eₙ ω t} ψₙ(ϱ)|² on `grid`, with cₙ = √Pₙ e^{−iγeₙ}.
pub fn coherent_density(state: &CoherentState, grid: &GridSpec, t: f64) -> Result<SampledFunction> {
    let model = state.model();
    if let SpectrumModel::Morse { .. } = model {
        return Err(Error::Unsupported("Morse eigenfunctions are not available".into()));
    }
    if !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    let mu = deformation_mu(model)?;
    let omega = model.omega();
    let coeffs: Vec<Complex64> = state
        .coefficients()
        .iter()
        .zip(state.levels())
        .map(|(c, e)| c * Complex64::from_polar(1.0, -e * omega * t))
        .collect();
    // high levels carry negligible weight, so judge the weighted error
    let psis = normalised_eigenfunctions(coeffs.len() - 1, mu, grid)?;
    let weighted: f64 = psis.iter().zip(state.probabilities()).map(|(p, w)| w * p.quadrature_estimate).sum();
    if weighted > QUADRATURE_TOL {
        return Err(Error::Quadrature { estimate: weighted });
    }
    let values = (0..grid.points.len())
        .map(|i| coeffs.iter().zip(&psis).map(|(c, p)| c * p.values[i]).sum::<Complex64>().norm_sqr())
        .collect();
    Ok(SampledFunction { x: grid.points.clone(), values, quadrature_estimate: weighted })
}
