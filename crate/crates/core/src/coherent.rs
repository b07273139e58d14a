//! Gazeau–Klauder coherent states |J, γ⟩ = 𝒩(J)⁻¹ Σₙ J^{n/2} e^{−iγeₙ} / √ρₙ |n⟩.
//!
//! Weights are handled in the log domain throughout. The state keeps its
//! probabilities Pₙ = Jⁿ/(𝒩²ρₙ) and levels eₙ; phases are recomputed from γ.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{ln_hyp0f1, ln_pochhammer, SeriesControl};
use crate::spectrum::{Spectrum, SpectrumModel};

/// Upper bound on the number of retained levels.
pub const TRUNCATION_CAP: usize = 5000;

/// Levels beyond the mode are dropped once Pₙ/P_max falls below this.
const RELATIVE_CUTOFF: f64 = 1e-18;

/// Bound on the discarded tail probability.
const TAIL_MASS: f64 = 1e-15;

/// ln ρₙ = Σ_{i=1}^{n} ln eᵢ, with ρ₀ = 1.
pub fn ln_rho<S: Spectrum + ?Sized>(spec: &S, n: usize) -> Result<f64> {
    let mut acc = 0.0;
    for i in 1..=n {
        let e = spec.level(i)?;
        if !(e > 0.0) {
            return Err(Error::DegenerateSpectrum { n: i, value: e });
        }
        acc += e.ln();
    }
    Ok(acc)
}

/// Quasi-harmonic closed form ln[n! υ²ⁿ Γ(2+1/υ²+n)/Γ(2+1/υ²)].
pub fn ln_rho_closed_form(upsilon: f64, n: usize) -> Result<f64> {
    if !(upsilon > 0.0) || !upsilon.is_finite() {
        return Err(Error::Domain(format!("closed-form rho needs upsilon > 0, got {upsilon}")));
    }
    let u2 = upsilon * upsilon;
    let ln_fact = ln_pochhammer(1.0, n)?;
    Ok(ln_fact + n as f64 * u2.ln() + ln_pochhammer(2.0 + 1.0 / u2, n)?)
}

/// Radius of convergence of Σ Jⁿ/ρₙ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    Finite(f64),
    Infinite,
}

impl Radius {
    pub fn contains(&self, j: f64) -> bool {
        match *self {
            Radius::Infinite => j.is_finite(),
            Radius::Finite(r) => j < r,
        }
    }
}

/// Estimates R = lim ρₙ^{1/n} from the ratios ρₙ₊₁/ρₙ = eₙ₊₁ sampled at
/// n = 200, 300, 400.
///
/// The limit is declared infinite when the ratio has passed 1e6 and is
/// still growing, or when its local growth exponent
/// p = ln(e₄₀₀/e₃₀₀)/ln(4/3) exceeds 0.1, which catches polynomially
/// growing levels long before they reach 1e6. A truncated spectrum gives a
/// polynomial, hence an infinite radius.
pub fn radius_of_convergence<S: Spectrum + ?Sized>(spec: &S) -> Radius {
    if spec.max_level().is_some() {
        return Radius::Infinite;
    }
    let sample = |n: usize| spec.level(n).unwrap_or(f64::NAN);
    let (r200, r300, r400) = (sample(200), sample(300), sample(400));
    if !(r400 > 0.0 && r300 > 0.0 && r200 > 0.0) {
        return Radius::Finite(0.0);
    }
    if r400 > 1e6 && r400 > r300 && r300 > r200 {
        return Radius::Infinite;
    }
    let exponent = (r400 / r300).ln() / (4.0f64 / 3.0).ln();
    if exponent > 0.1 {
        Radius::Infinite
    } else {
        Radius::Finite(r400)
    }
}

/// Normalised weights of Σ Jⁿ/ρₙ together with ln 𝒩².
#[derive(Debug, Clone)]
pub(crate) struct WeightProfile {
    pub probs: Vec<f64>,
    pub levels: Vec<f64>,
    pub ln_norm_sq: f64,
}

/// Builds the weight profile relative to the mode, so that the largest
/// term is exactly 1 before the single normalising pass.
pub(crate) fn weight_profile<S: Spectrum + ?Sized>(spec: &S, j: f64) -> Result<WeightProfile> {
    if !(j >= 0.0) || !j.is_finite() {
        return Err(Error::Domain(format!("J must be finite and >= 0, got {j}")));
    }
    if let Some(n_max) = spec.max_level() {
        return Err(Error::TruncatedSpectrum { n_max });
    }
    let radius = radius_of_convergence(spec);
    if !radius.contains(j) {
        return Err(Error::Domain(format!("J = {j} lies outside the radius of convergence {radius:?}")));
    }
    if j == 0.0 {
        return Ok(WeightProfile { probs: vec![1.0], levels: vec![0.0], ln_norm_sq: 0.0 });
    }
    let ln_j = j.ln();

    // levels up to the mode: the last n with eₙ ≤ J
    let mut levels = vec![0.0];
    loop {
        let n = levels.len();
        if n > TRUNCATION_CAP {
            return Err(Error::TruncationCap { cap: TRUNCATION_CAP });
        }
        let e = spec.level(n)?;
        if !(e > 0.0) || e <= levels[n - 1] {
            return Err(Error::DegenerateSpectrum { n, value: e });
        }
        levels.push(e);
        if e > j {
            break;
        }
    }
    let mode = levels.len() - 2;

    // log-weights relative to the mode
    let mut d = vec![0.0; mode + 1];
    let mut ln_top = 0.0;
    for n in 1..=mode {
        ln_top += ln_j - levels[n].ln();
    }
    for n in (0..mode).rev() {
        d[n] = d[n + 1] - (ln_j - levels[n + 1].ln());
    }
    let ln_cut = RELATIVE_CUTOFF.ln();
    let mut sum: f64 = d.iter().map(|x| x.exp()).sum();
    let mut n = mode;
    loop {
        n += 1;
        if n > TRUNCATION_CAP {
            return Err(Error::TruncationCap { cap: TRUNCATION_CAP });
        }
        if levels.len() <= n {
            let e = spec.level(n)?;
            if e <= levels[n - 1] {
                return Err(Error::DegenerateSpectrum { n, value: e });
            }
            levels.push(e);
        }
        let dn = d[n - 1] + ln_j - levels[n].ln();
        d.push(dn);
        sum += dn.exp();
        if dn < ln_cut {
            let next = spec.level(n + 1)?;
            let r = j / next;
            if r < 1.0 && dn.exp() * r / (1.0 - r) < TAIL_MASS * sum {
                break;
            }
        }
    }
    levels.truncate(d.len());
    let probs = d.iter().map(|x| x.exp() / sum).collect();
    Ok(WeightProfile { probs, levels, ln_norm_sq: ln_top + sum.ln() })
}

/// ln 𝒩²(J) = ln Σₙ Jⁿ/ρₙ by direct log-domain summation.
pub fn ln_normalization_sq<S: Spectrum + ?Sized>(spec: &S, j: f64) -> Result<f64> {
    Ok(weight_profile(spec, j)?.ln_norm_sq)
}

/// ln 𝒩²(J) in closed form: ln ₀F₁(2+1/υ²; J/υ²) for quasi-harmonic spectra
/// (Mathews–Lakshmanan with λ̃ < 0 included) and J/μ² for Morse.
pub fn ln_normalization_sq_closed_form(model: &SpectrumModel, j: f64) -> Result<f64> {
    if !(j >= 0.0) || !j.is_finite() {
        return Err(Error::Domain(format!("J must be finite and >= 0, got {j}")));
    }
    if let SpectrumModel::Morse { mu } = *model {
        return Ok(j / (mu * mu));
    }
    match model.as_quasi_harmonic() {
        Some((_, u)) if u > 0.0 => {
            let u2 = u * u;
            ln_hyp0f1(2.0 + 1.0 / u2, j / u2, SeriesControl::default())
        }
        Some(_) => Ok(j), // υ = 0: ρₙ = n!, 𝒩² = e^J
        None => Err(Error::Unsupported(format!("no closed form for {model}"))),
    }
}

/// A built coherent state: probabilities Pₙ, levels eₙ and the angle γ.
#[derive(Debug, Clone)]
pub struct CoherentState {
    model: SpectrumModel,
    j: f64,
    gamma: f64,
    probs: Vec<f64>,
    levels: Vec<f64>,
    ln_norm_sq: f64,
}

/// Builds |J, γ⟩ truncated where the omitted probability is below 1e-15.
pub fn build_state(model: &SpectrumModel, j: f64, gamma: f64) -> Result<CoherentState> {
    if !gamma.is_finite() {
        return Err(Error::Domain(format!("gamma must be finite, got {gamma}")));
    }
    let profile = weight_profile(model, j)?;
    Ok(CoherentState {
        model: *model,
        j,
        gamma,
        probs: profile.probs,
        levels: profile.levels,
        ln_norm_sq: profile.ln_norm_sq,
    })
}

impl CoherentState {
    pub fn model(&self) -> &SpectrumModel {
        &self.model
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Index of the last retained level.
    pub fn truncation_n(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// ln Pₙ = ln(Jⁿ/(𝒩²ρₙ)).
    pub fn log_weights(&self) -> Vec<f64> {
        self.probs.iter().map(|p| p.ln()).collect()
    }

    pub fn ln_normalization_sq(&self) -> f64 {
        self.ln_norm_sq
    }

    /// Expansion coefficients cₙ = √Pₙ e^{−iγeₙ}.
    pub fn coefficients(&self) -> Vec<Complex64> {
        self.probs
            .iter()
            .zip(&self.levels)
            .map(|(p, e)| Complex64::from_polar(p.sqrt(), -self.gamma * e))
            .collect()
    }

    /// Σ Pₙ eₙ, which must reproduce J.
    pub fn mean_level(&self) -> f64 {
        self.probs.iter().zip(&self.levels).map(|(p, e)| p * e).sum()
    }
}

/// ⟨b|a⟩ = Σₙ √(PₙP′ₙ) e^{−i(γ−γ′)eₙ} with (J, γ) from `a` and (J′, γ′) from `b`.
///
/// The geometric mean √(PₙP′ₙ) decays far more slowly than the shorter
/// state's own weights, so that state is continued past its truncation with
/// Pₙ = Pₙ₋₁ J/eₙ over the levels of the longer one.
pub fn overlap(a: &CoherentState, b: &CoherentState) -> Result<Complex64> {
    if a.model != b.model {
        return Err(Error::IncompatibleModels);
    }
    let dg = a.gamma - b.gamma;
    let (long, short) = if a.probs.len() >= b.probs.len() { (a, b) } else { (b, a) };
    let mut ln_p_short = short.probs.last().copied().unwrap_or(0.0).ln();
    let ln_j_short = short.j.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, (&p_long, &e)) in long.probs.iter().zip(&long.levels).enumerate() {
        let p_short = if n < short.probs.len() {
            short.probs[n]
        } else {
            ln_p_short += ln_j_short - e.ln();
            ln_p_short.exp()
        };
        sum += Complex64::from_polar((p_long * p_short).sqrt(), -dg * e);
    }
    Ok(sum)
}

/// ‖a − b‖² = 2(1 − Re⟨b|a⟩), clamped into [0, 4] against rounding.
pub fn continuity_gap(a: &CoherentState, b: &CoherentState) -> Result<f64> {
    let ov = overlap(a, b)?;
    Ok((2.0 * (1.0 - ov.re)).clamp(0.0, 4.0))
}
