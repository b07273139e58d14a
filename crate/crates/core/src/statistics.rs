//! Weighting distribution Pₙ, its moments and Mandel Q, the inversion
//! n₀ ↦ J, and the numerical resolution-of-unity moment check.

use serde::Serialize;

use crate::coherent::{ln_rho, ln_rho_closed_form, weight_profile};
use crate::error::{Error, Result};
use crate::specfun::quadrature::gauss_legendre;
use crate::specfun::{ln_bessel_k, ln_hyp0f1, log_gamma, meijer_g20_02_mellin_barnes, SeriesControl};
use crate::spectrum::SpectrumModel;

/// Probabilities Pₙ = Jⁿ/(𝒩²ρₙ) with their summary moments.
#[derive(Debug, Clone, Serialize)]
pub struct WeightingDistribution {
    pub probs: Vec<f64>,
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
    pub mandel_q: f64,
}

impl WeightingDistribution {
    fn from_probs(probs: Vec<f64>) -> Self {
        let mut mean = 0.0;
        let mut factorial = 0.0; // ⟨n(n−1)⟩
        for (n, p) in probs.iter().enumerate() {
            let nf = n as f64;
            mean += p * nf;
            factorial += p * nf * (nf - 1.0);
        }
        let second_moment = factorial + mean;
        // Q from the factorial moment avoids the cancellation in (Δn)² − ⟨n⟩
        let excess = factorial - mean * mean;
        let variance = (excess + mean).max(0.0);
        let mandel_q = if mean > 0.0 { excess / mean } else { 0.0 };
        Self { probs, mean, second_moment, variance, mandel_q }
    }

    /// Most probable n.
    pub fn mode(&self) -> usize {
        self.probs
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |best, (n, &p)| if p > best.1 { (n, p) } else { best })
            .0
    }
}

/// Weighting distribution of |J, γ⟩ with moments from direct summation.
pub fn distribution(model: &SpectrumModel, j: f64) -> Result<WeightingDistribution> {
    Ok(WeightingDistribution::from_probs(weight_profile(model, j)?.probs))
}

/// Series Mandel parameter; zero at J = 0 by convention.
pub fn mandel_q(model: &SpectrumModel, j: f64) -> Result<f64> {
    Ok(distribution(model, j)?.mandel_q)
}

fn check_j(j: f64) -> Result<()> {
    if j >= 0.0 && j.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("J must be finite and >= 0, got {j}")))
    }
}

/// Ratios ₀F₁(k+a; y)/₀F₁(2+a; y), k = 3, 4, with a = 1/υ², y = J/υ².
fn hyp_ratios(u: f64, j: f64) -> Result<(f64, f64)> {
    let u2 = u * u;
    let (a, y) = (1.0 / u2, j / u2);
    let ctl = SeriesControl::default();
    let f2 = ln_hyp0f1(2.0 + a, y, ctl)?;
    let f3 = ln_hyp0f1(3.0 + a, y, ctl)?;
    let f4 = ln_hyp0f1(4.0 + a, y, ctl)?;
    Ok(((f3 - f2).exp(), (f4 - f2).exp()))
}

enum ClosedForm {
    Poisson(f64),
    QuasiHarmonic(f64),
}

fn closed_form_kind(model: &SpectrumModel) -> Result<ClosedForm> {
    match *model {
        SpectrumModel::Morse { mu } => Ok(ClosedForm::Poisson(mu * mu)),
        _ => match model.as_quasi_harmonic() {
            Some((_, u)) if u > 0.0 => Ok(ClosedForm::QuasiHarmonic(u)),
            Some(_) => Ok(ClosedForm::Poisson(1.0)),
            None => Err(Error::Unsupported(format!("no closed-form moments for {model}"))),
        },
    }
}

/// ⟨n⟩ = J/(2υ²+1) · ₀F₁(3+1/υ²; J/υ²)/₀F₁(2+1/υ²; J/υ²).
/// The υ = 0 and Morse cases reduce to the Poisson mean J/μ² (μ = 1 at υ = 0).
pub fn mean_closed_form(model: &SpectrumModel, j: f64) -> Result<f64> {
    check_j(j)?;
    match closed_form_kind(model)? {
        ClosedForm::Poisson(scale) => Ok(j / scale),
        ClosedForm::QuasiHarmonic(u) => {
            let (r3, _) = hyp_ratios(u, j)?;
            Ok(j / (2.0 * u * u + 1.0) * r3)
        }
    }
}

/// (Δn)² = ⟨n⟩(1 − ⟨n⟩) + J²/((2υ²+1)(3υ²+1)) · ₀F₁(4+1/υ²; J/υ²)/₀F₁(2+1/υ²; J/υ²).
pub fn variance_closed_form(model: &SpectrumModel, j: f64) -> Result<f64> {
    check_j(j)?;
    match closed_form_kind(model)? {
        ClosedForm::Poisson(scale) => Ok(j / scale),
        ClosedForm::QuasiHarmonic(u) => {
            let u2 = u * u;
            let (r3, r4) = hyp_ratios(u, j)?;
            let mean = j / (2.0 * u2 + 1.0) * r3;
            let factorial = j * j / ((2.0 * u2 + 1.0) * (3.0 * u2 + 1.0)) * r4;
            Ok(mean * (1.0 - mean) + factorial)
        }
    }
}

/// Q = J/(3υ²+1) · F₄/F₃ − J/(2υ²+1) · F₃/F₂ with F_k = ₀F₁(k+1/υ²; J/υ²).
pub fn mandel_q_closed_form(model: &SpectrumModel, j: f64) -> Result<f64> {
    check_j(j)?;
    if j == 0.0 {
        return Ok(0.0);
    }
    match closed_form_kind(model)? {
        ClosedForm::Poisson(_) => Ok(0.0),
        ClosedForm::QuasiHarmonic(u) => {
            let u2 = u * u;
            let (r3, r4) = hyp_ratios(u, j)?;
            Ok(j / (3.0 * u2 + 1.0) * (r4 / r3) - j / (2.0 * u2 + 1.0) * r3)
        }
    }
}

/// Finds J with ⟨n⟩(J) = n₀ to 1e-8 absolute by bracketing and bisection on
/// the strictly increasing mean.
pub fn solve_j(model: &SpectrumModel, n0: f64) -> Result<f64> {
    if !(n0 >= 0.0) || !n0.is_finite() {
        return Err(Error::Domain(format!("n0 must be finite and >= 0, got {n0}")));
    }
    if let Some(n_max) = model.n_max_valid() {
        return Err(Error::TruncatedSpectrum { n_max });
    }
    if let SpectrumModel::Morse { mu } = *model {
        return Ok(n0 * mu * mu);
    }
    if n0 == 0.0 {
        return Ok(0.0);
    }
    let mean = |j: f64| distribution(model, j).map(|d| d.mean);
    let mut lo = 0.0;
    let mut hi = 10.0 * model.level_continuous(n0).max(1.0);
    while mean(hi)? < n0 {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Domain(format!("no J reaches mean {n0}")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let m = mean(mid)?;
        if (m - n0).abs() <= 1e-10 || mid == lo || mid == hi {
            return Ok(mid);
        }
        if m < n0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One point of the Meijer-G reduction check.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionPoint {
    pub y: f64,
    pub mellin_barnes: f64,
    pub bessel_form: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionCheck {
    pub order: f64,
    pub points: Vec<ReductionPoint>,
    pub passed: bool,
}

/// Sample points for the reduction check.
pub const REDUCTION_POINTS: [f64; 3] = [0.5, 5.0, 30.0];

/// Tolerance for the reduction check.
pub const REDUCTION_TOL: f64 = 1e-8;

/// ln G^{2,0}_{0,2}(y | 0, ν) through G = 2 y^{ν/2} K_ν(2√y).
fn ln_meijer_bessel(y: f64, nu: f64) -> Result<f64> {
    Ok(std::f64::consts::LN_2 + 0.5 * nu * y.ln() + ln_bessel_k(nu, 2.0 * y.sqrt())?)
}

/// Compares the Bessel reduction of G^{2,0}_{0,2}(y | 0, 1+1/υ²) with the
/// Mellin–Barnes integral at [`REDUCTION_POINTS`].
pub fn validate_meijer_reduction(upsilon: f64) -> Result<ReductionCheck> {
    if !(upsilon > 0.0) {
        return Err(Error::Domain(format!("measure check needs upsilon > 0, got {upsilon}")));
    }
    let nu = 1.0 + 1.0 / (upsilon * upsilon);
    let mut points = Vec::new();
    for y in REDUCTION_POINTS {
        let mb = meijer_g20_02_mellin_barnes(y, 0.0, nu)?;
        let bf = ln_meijer_bessel(y, nu)?.exp();
        points.push(ReductionPoint { y, mellin_barnes: mb, bessel_form: bf, rel_err: ((mb - bf) / bf).abs() });
    }
    let passed = points.iter().all(|p| p.rel_err <= REDUCTION_TOL);
    Ok(ReductionCheck { order: nu, points, passed })
}

/// Right-hand side of the moment condition, Γ(n+1)Γ(2+1/υ²+n)υ²ⁿ/Γ(2+1/υ²),
/// evaluated through log-gamma (independently of the ρₙ product).
pub fn measure_moment_rhs(upsilon: f64, n: usize) -> Result<f64> {
    let u2 = upsilon * upsilon;
    let b = 2.0 + 1.0 / u2;
    let nf = n as f64;
    Ok((log_gamma(nf + 1.0)? + log_gamma(b + nf)? - log_gamma(b)? + nf * u2.ln()).exp())
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentRow {
    pub n: usize,
    /// ∫ w̃(J) Jⁿ dJ by quadrature.
    pub lhs: f64,
    /// ρₙ.
    pub rhs: f64,
    pub rel_err: f64,
    /// Difference between the full rule and one with half the panels.
    pub quadrature_estimate: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureCheck {
    pub upsilon: f64,
    pub reduction: ReductionCheck,
    pub rows: Vec<MomentRow>,
}

const MEASURE_PANELS: usize = 100;
const MEASURE_NODES: usize = 20;

/// Checks ∫₀^∞ w̃(J) Jⁿ dJ = ρₙ for n ≤ `n_max` (at most 6), with
/// w̃(J) = G^{2,0}_{0,2}(J/υ² | 0, 1+1/υ²)/(υ²Γ(2+1/υ²)).
///
/// The integral runs over [0, J*], J* being where the integrand has dropped
/// to 1e-18 of its peak, with 100 Gauss–Legendre panels of 20 nodes.
pub fn verify_measure_moments(model: &SpectrumModel, n_max: usize) -> Result<MeasureCheck> {
    let u = match model.as_quasi_harmonic() {
        Some((_, u)) if u > 0.0 => u,
        _ => return Err(Error::Unsupported(format!("measure check needs a quasi-harmonic model with upsilon > 0, got {model}"))),
    };
    if n_max > 6 {
        return Err(Error::Domain(format!("n_max must be <= 6, got {n_max}")));
    }
    let reduction = validate_meijer_reduction(u)?;
    let u2 = u * u;
    let nu = 1.0 + 1.0 / u2;
    let ln_norm = u2.ln() + log_gamma(1.0 + nu)?;
    let ln_weight = |j: f64| -> Result<f64> { Ok(ln_meijer_bessel(j / u2, nu)? - ln_norm) };

    let mut rows = Vec::new();
    for n in 0..=n_max {
        let nf = n as f64;
        let ln_f = |j: f64| -> Result<f64> { Ok(ln_weight(j)? + nf * j.ln()) };
        // locate the peak on a geometric scan, then the cut-off beyond it
        let mut peak = f64::NEG_INFINITY;
        let mut j_peak = 0.0;
        let mut j = 1e-3 * u2;
        while j < 1e7 {
            let v = ln_f(j)?;
            if v > peak {
                peak = v;
                j_peak = j;
            } else if v < peak - 60.0 {
                break;
            }
            j *= 1.1;
        }
        let mut hi = j_peak.max(1.0) * 2.0;
        while ln_f(hi)? > peak - 18.0 * std::f64::consts::LN_10 {
            hi *= 1.5;
        }
        let integral = |panels: usize| -> Result<f64> {
            let (x, w) = gauss_legendre(MEASURE_NODES);
            let width = hi / panels as f64;
            let mut total = 0.0;
            for p in 0..panels {
                let a = p as f64 * width;
                for (xi, wi) in x.iter().zip(&w) {
                    let t = a + 0.5 * width * (xi + 1.0);
                    total += 0.5 * width * wi * (ln_f(t)? - peak).exp();
                }
            }
            Ok(total * peak.exp())
        };
        let lhs = integral(MEASURE_PANELS)?;
        let coarse = integral(MEASURE_PANELS / 2)?;
        let rhs = ln_rho(model, n)?.exp();
        rows.push(MomentRow {
            n,
            lhs,
            rhs,
            rel_err: ((lhs - rhs) / rhs).abs(),
            quadrature_estimate: ((lhs - coarse) / lhs).abs(),
        });
    }
    Ok(MeasureCheck { upsilon: u, reduction, rows })
}

/// Closed-form ρₙ for the quasi-harmonic spectrum, re-exported for reports.
pub fn rho_closed_form(upsilon: f64, n: usize) -> Result<f64> {
    ln_rho_closed_form(upsilon, n).map(f64::exp)
}
