//! Time evolution: recurrence timescales, the autocorrelation A(t) and
//! detection of full and fractional revivals.
//!
//! Convention: A(t) = ⟨J,γ,t|J,γ⟩ = Σₙ Pₙ e^{+i eₙ ω t}. The opposite sign
//! gives the complex conjugate and the same |A|².

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::coherent::CoherentState;
use crate::error::{Error, Result};
use crate::spectrum::SpectrumModel;

/// Samples per classical period in the default grid.
pub const DEFAULT_SAMPLES_PER_TCL: usize = 20;

/// Default horizon in units of T_rev.
pub const DEFAULT_HORIZON_REV: f64 = 1.1;

/// Horizon in units of T_cl when there is no revival time.
pub const FALLBACK_HORIZON_CL: f64 = 10.0;

/// Minimum resolution accepted by [`detect_revivals`].
pub const MIN_SAMPLES_PER_TCL: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Timescales {
    pub t_classical: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_revival: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_super: Option<f64>,
}

/// T_r = 2π / (ω/r! · |dʳe/dnʳ|) at n = n₀, for r = 1, 2, 3.
///
/// The built-in levels are quadratic in n, so T_sup is always absent and
/// T_rev is absent for linear spectra.
pub fn timescales(model: &SpectrumModel, n0: f64) -> Result<Timescales> {
    if !(n0 >= 0.0) || !n0.is_finite() {
        return Err(Error::Domain(format!("n0 must be finite and >= 0, got {n0}")));
    }
    let omega = model.omega();
    let (c1, c2) = model.level_polynomial();
    let slope = c1 + 2.0 * c2 * n0;
    if !(slope > 0.0) {
        return Err(Error::Domain(format!("level spacing vanishes at n0 = {n0} for {model}")));
    }
    let t_revival = (c2 != 0.0).then(|| 2.0 * PI / (omega * c2.abs()));
    Ok(Timescales { t_classical: 2.0 * PI / (omega * slope), t_revival, t_super: None })
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesMeta {
    pub model: SpectrumModel,
    #[serde(rename = "J")]
    pub j: f64,
    pub gamma: f64,
    pub n0: f64,
    pub t_classical: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_revival: Option<f64>,
}

/// Sampled A(t) with the data needed to interpret it.
#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
    pub meta: SeriesMeta,
}

impl TimeSeries {
    /// t/T_rev when T_rev exists, otherwise t/T_cl.
    pub fn tau(&self, t: f64) -> f64 {
        t / self.meta.t_revival.unwrap_or(self.meta.t_classical)
    }

    pub fn tau_classical(&self, t: f64) -> f64 {
        t / self.meta.t_classical
    }

    pub fn abs2(&self) -> Vec<f64> {
        self.values.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Uniform grid from 0 with `samples_per_tcl` points per T_cl up to
/// `horizon` (inclusive, absolute time units).
pub fn time_grid(t_classical: f64, samples_per_tcl: usize, horizon: f64) -> Result<Vec<f64>> {
    if samples_per_tcl == 0 || !(horizon >= 0.0) || !horizon.is_finite() {
        return Err(Error::Domain("time grid needs samples_per_tcl >= 1 and a finite horizon >= 0".into()));
    }
    let dt = t_classical / samples_per_tcl as f64;
    let steps = (horizon / dt + 1e-9).floor() as usize;
    Ok((0..=steps).map(|i| i as f64 * dt).collect())
}

/// 20 samples per T_cl up to 1.1 T_rev, or 10 T_cl when T_rev is absent.
pub fn default_time_grid(ts: &Timescales) -> Result<Vec<f64>> {
    let horizon = match ts.t_revival {
        Some(tr) => DEFAULT_HORIZON_REV * tr,
        None => FALLBACK_HORIZON_CL * ts.t_classical,
    };
    time_grid(ts.t_classical, DEFAULT_SAMPLES_PER_TCL, horizon)
}

/// A(t) = Σₙ Pₙ e^{i eₙ ω t} over the retained levels. `n0` fixes the
/// timescales in the metadata and defaults to the state's mean ⟨n⟩.
pub fn autocorrelation(state: &CoherentState, times: &[f64], n0: Option<f64>) -> Result<TimeSeries> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::Domain("time grid must be finite".into()));
    }
    let probs = state.probabilities();
    let n0 = n0.unwrap_or_else(|| probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum());
    let model = *state.model();
    let ts = timescales(&model, n0)?;
    let omega = model.omega();
    let values = times
        .iter()
        .map(|&t| {
            let wt = omega * t;
            probs
                .iter()
                .zip(state.levels())
                .map(|(p, e)| Complex64::from_polar(*p, e * wt))
                .sum()
        })
        .collect();
    Ok(TimeSeries {
        times: times.to_vec(),
        values,
        meta: SeriesMeta {
            model,
            j: state.j(),
            gamma: state.gamma(),
            n0,
            t_classical: ts.t_classical,
            t_revival: ts.t_revival,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RevivalEvent {
    pub time: f64,
    pub tau: f64,
    pub amplitude_sq: f64,
    /// (p, q) with gcd(p, q) = 1 when the peak sits at p/q of the period.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<(u32, u32)>,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Finds local maxima of |A|² above `threshold` and labels them p/q when
/// they lie within two grid steps of p/q·T_rev (T_cl for linear spectra),
/// q ≤ `q_max`, p ≥ 1.
///
/// Maxima are located on a 5-point moving average of |A|² with a 3-point
/// test; the threshold applies to the raw |A|² at that sample.
pub fn detect_revivals(series: &TimeSeries, threshold: f64, q_max: u32) -> Result<Vec<RevivalEvent>> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Domain(format!("threshold must lie in (0, 1), got {threshold}")));
    }
    if q_max == 0 {
        return Err(Error::Domain("q_max must be >= 1".into()));
    }
    let times = &series.times;
    if times.len() < 3 {
        return Err(Error::Grid("need at least three time samples".into()));
    }
    let dt = times[1] - times[0];
    let t_cl = series.meta.t_classical;
    let samples_per_period = t_cl / dt;
    if !(samples_per_period >= MIN_SAMPLES_PER_TCL) {
        return Err(Error::Resolution { samples_per_period });
    }
    let period = series.meta.t_revival.unwrap_or(t_cl);
    let t_end = *times.last().expect("non-empty grid");
    if t_end < period * (1.0 - 1e-12) {
        return Err(Error::Grid(format!("series ends at t = {t_end}, before the period {period}")));
    }

    let a2 = series.abs2();
    let len = a2.len();
    let smooth: Vec<f64> = (0..len)
        .map(|i| {
            let lo = i.saturating_sub(2);
            let hi = (i + 2).min(len - 1);
            a2[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect();

    let mut events = Vec::new();
    for i in 1..len - 1 {
        if !(smooth[i] > smooth[i - 1] && smooth[i] >= smooth[i + 1] && a2[i] > threshold) {
            continue;
        }
        let t = times[i];
        events.push(RevivalEvent { time: t, tau: t / period, amplitude_sq: a2[i], label: label(t, period, dt, q_max) });
    }
    Ok(events)
}

fn label(t: f64, period: f64, dt: f64, q_max: u32) -> Option<(u32, u32)> {
    let window = 2.0 * dt * (1.0 + 1e-9);
    for q in 1..=q_max {
        let p = (t / period * q as f64).round();
        if p < 1.0 {
            continue;
        }
        let p = p as u32;
        if gcd(p, q) == 1 && (t - p as f64 / q as f64 * period).abs() <= window {
            return Some((p, q));
        }
    }
    None
}

/// Number of events carrying a p/q label.
pub fn labelled_count(events: &[RevivalEvent]) -> usize {
    events.iter().filter(|e| e.label.is_some()).count()
}
