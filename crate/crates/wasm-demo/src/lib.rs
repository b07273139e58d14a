//! Browser bindings for three quasi-harmonic views: the weighting
//! distribution, |A(t)|² and an eigenfunction with its density.
//!
//! The `*_series` functions are plain Rust so they can be tested natively;
//! the `#[wasm_bindgen]` wrappers only translate errors.

use gkstates::dynamics::{autocorrelation, time_grid, timescales};
use gkstates::statistics::{distribution, solve_j};
use gkstates::wavefunctions::{deformation_mu, eigenfunction, GridSpec};
use gkstates::{build_state, SpectrumModel};
use wasm_bindgen::prelude::*;

fn model(alpha: f64, upsilon: f64) -> Result<SpectrumModel, String> {
    SpectrumModel::quasi_harmonic(alpha, upsilon).map_err(|e| e.to_string())
}

/// `[J, P_0, P_1, ...]` for the state with mean excitation `n0`.
pub fn weights_series(alpha: f64, upsilon: f64, n0: f64) -> Result<Vec<f64>, String> {
    let m = model(alpha, upsilon)?;
    let j = solve_j(&m, n0).map_err(|e| e.to_string())?;
    let d = distribution(&m, j).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(d.probs.len() + 1);
    out.push(j);
    out.extend_from_slice(&d.probs);
    Ok(out)
}

/// Interleaved `[τ, |A|², τ, |A|², ...]` with τ = t/T_rev, up to `horizon_rev`.
pub fn autocorrelation_series(
    alpha: f64,
    upsilon: f64,
    n0: f64,
    samples_per_tcl: usize,
    horizon_rev: f64,
) -> Result<Vec<f64>, String> {
    let m = model(alpha, upsilon)?;
    let j = solve_j(&m, n0).map_err(|e| e.to_string())?;
    let state = build_state(&m, j, 0.0).map_err(|e| e.to_string())?;
    let ts = timescales(&m, n0).map_err(|e| e.to_string())?;
    let t_rev = ts.t_revival.ok_or("upsilon must be positive for a revival time")?;
    let times = time_grid(ts.t_classical, samples_per_tcl, horizon_rev * t_rev).map_err(|e| e.to_string())?;
    let series = autocorrelation(&state, &times, Some(n0)).map_err(|e| e.to_string())?;
    Ok(series.times.iter().zip(series.abs2()).flat_map(|(t, a)| [t / t_rev, a]).collect())
}

/// Interleaved `[ϱ, ψₙ, |ψₙ|², ...]` on a grid of `points` (≡ 1 mod 4) nodes.
pub fn eigenfunction_series(alpha: f64, upsilon: f64, n: usize, points: usize) -> Result<Vec<f64>, String> {
    let m = model(alpha, upsilon)?;
    let mu = deformation_mu(&m).map_err(|e| e.to_string())?;
    let grid = GridSpec::new(mu, points, 1e-6 / mu).map_err(|e| e.to_string())?;
    let psi = eigenfunction(n, &m, &grid).map_err(|e| e.to_string())?;
    Ok(psi.x.iter().zip(&psi.values).flat_map(|(x, v)| [*x, *v, v * v]).collect())
}

#[wasm_bindgen]
pub fn weights(alpha: f64, upsilon: f64, n0: f64) -> Result<Vec<f64>, JsValue> {
    weights_series(alpha, upsilon, n0).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn autocorrelation_abs2(
    alpha: f64,
    upsilon: f64,
    n0: f64,
    samples_per_tcl: usize,
    horizon_rev: f64,
) -> Result<Vec<f64>, JsValue> {
    autocorrelation_series(alpha, upsilon, n0, samples_per_tcl, horizon_rev).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn eigenfunction_density(alpha: f64, upsilon: f64, n: usize, points: usize) -> Result<Vec<f64>, JsValue> {
    eigenfunction_series(alpha, upsilon, n, points).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_are_normalised_with_requested_mean() {
        let w = weights_series(1.0, 0.2, 10.0).unwrap();
        let probs = &w[1..];
        let total: f64 = probs.iter().sum();
        let mean: f64 = probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((mean - 10.0).abs() < 1e-9);
    }

    #[test]
    fn autocorrelation_starts_at_one_and_revives() {
        let s = autocorrelation_series(1.0, 0.1, 20.0, 20, 1.1).unwrap();
        assert_eq!(s.len() % 2, 0);
        assert!((s[1] - 1.0).abs() < 1e-12);
        let at_rev = s.chunks(2).find(|c| (c[0] - 1.0).abs() < 1e-9).expect("grid hits T_rev");
        assert!((at_rev[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn eigenfunction_density_is_normalised() {
        let s = eigenfunction_series(1.0, 0.3, 2, 2001).unwrap();
        let rows: Vec<&[f64]> = s.chunks(3).collect();
        let h = rows[1][0] - rows[0][0];
        let norm: f64 = rows.iter().map(|r| r[2]).sum::<f64>() * h;
        assert!((norm - 1.0).abs() < 1e-6);
        assert!(rows.iter().all(|r| (r[1] * r[1] - r[2]).abs() < 1e-15));
    }

    #[test]
    fn errors_surface_as_strings() {
        assert!(weights_series(1.0, -0.1, 5.0).is_err());
        assert!(autocorrelation_series(1.0, 0.0, 5.0, 20, 1.0).is_err());
        assert!(eigenfunction_series(1.0, 0.3, 2, 2002).is_err());
    }
}
