use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::gamma::ln_gamma_complex;
use super::quadrature::integrate;
use crate::error::{Error, Result};

/// Integrand cut-off below the peak: e^{-46.05} ≈ 1e-20.
const LN_CUTOFF: f64 = 46.051_701_859_880_914;

fn ln_cosh(y: f64) -> f64 {
    let y = y.abs();
    y + (-2.0 * y).exp().ln_1p() - LN_2
}

/// ln K_ν(x) for real ν and x > 0, from
/// K_ν(x) = ∫₀^∞ exp(−x cosh t) cosh(νt) dt.
///
/// The integrand is scaled by its maximum before integration, so the result
/// is usable far outside the range where K_ν itself is representable.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_k requires x > 0, got {x}")));
    }
    if !nu.is_finite() {
        return Err(Error::Domain(format!("bessel_k requires a finite order, got {nu}")));
    }
    let nu = nu.abs();
    let log_f = |t: f64| -x * t.cosh() + ln_cosh(nu * t);

    // Stationary point: x sinh t = ν tanh(νt). Interior only when ν² > x.
    let t_peak = if nu * nu > x {
        let mut lo = 0.0;
        let mut hi = (nu / x).asinh();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            let slope = -x * mid.sinh() + nu * (nu * mid).tanh();
            if slope > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    } else {
        0.0
    };
    let peak = log_f(t_peak);

    let mut width = 1.0;
    while log_f(t_peak + width) > peak - LN_CUTOFF {
        width *= 2.0;
    }
    let upper = t_peak + width;

    let scaled = |t: f64| (log_f(t) - peak).exp();
    let mut total = 0.0;
    if t_peak > 0.0 {
        total += integrate(scaled, 0.0, t_peak, 1e-13, 0.0, 2000)?.0;
    }
    total += integrate(scaled, t_peak, upper, 1e-13, 0.0, 2000)?.0;
    Ok(peak + total.ln())
}

/// Modified Bessel function of the second kind K_ν(x), x > 0.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    ln_bessel_k(nu, x).map(f64::exp)
}

/// Meijer G^{2,0}_{0,2}(y | b1, b2) from its Mellin–Barnes integral
///
/// G(y) = (1/2πi) ∫ Γ(b1 + s) Γ(b2 + s) y^{−s} ds along Re s = c,
///
/// evaluated on the line c = 1 − min(b1, b2) + 1/2 by adaptive quadrature.
/// Used to cross-check the Bessel reduction 2 y^{(b1+b2)/2} K_{b1−b2}(2√y).
pub fn meijer_g20_02_mellin_barnes(y: f64, b1: f64, b2: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("Meijer G requires y > 0, got {y}")));
    }
    let c = 0.5 - b1.min(b2) + 1.0;
    let ln_y = y.ln();
    let ln_integrand = |t: f64| {
        let s = Complex64::new(c, t);
        ln_gamma_complex(s + b1) + ln_gamma_complex(s + b2) - s * ln_y
    };
    let scale = ln_integrand(0.0).re;
    // |Γ(a + it)| decays like e^{−π|t|/2}; find where the product is negligible.
    let mut t_max = 8.0;
    while ln_integrand(t_max).re - scale > -60.0 {
        t_max *= 1.5;
    }
    // conjugate symmetry: G = (1/π) ∫₀^∞ Re[...] dt
    let f = |t: f64| (ln_integrand(t) - scale).exp().re;
    let (v, _) = integrate(f, 0.0, t_max, 1e-13, 1e-300, 20_000)?;
    Ok(v * scale.exp() / PI)
}
