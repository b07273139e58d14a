use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this argument the upward recurrence is used before Stirling.
const STIRLING_CUTOFF: f64 = 10.0;

// B_{2k} / (2k (2k-1)) for k = 1..8
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Natural logarithm of Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires a finite x > 0, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}

/// ln (a)ₙ = ln Γ(a+n) − ln Γ(a) for a > 0.
pub fn ln_pochhammer(a: f64, n: usize) -> Result<f64> {
    let base = log_gamma(a)?;
    if n < 64 {
        // the direct product is both cheaper and more accurate here
        return Ok((0..n).map(|k| (a + k as f64).ln()).sum());
    }
    Ok(ln_gamma_pos(a + n as f64) - base)
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x >= STIRLING_CUTOFF {
        return stirling(x);
    }
    let mut shifted = x;
    let mut prod = 1.0;
    while shifted < STIRLING_CUTOFF {
        prod *= shifted;
        shifted += 1.0;
    }
    stirling(shifted) - prod.ln()
}

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING_COEFFS {
        series += c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of ln Γ(z) for complex z (Lanczos, g = 7), with the
/// reflection formula for Re z < 1/2. Accurate to roughly 1e-14 relative.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let pi = Complex64::new(PI, 0.0);
        return pi.ln() - (pi * z).sin().ln() - ln_gamma_complex(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}
