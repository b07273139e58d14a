use super::SeriesControl;
use crate::error::{Error, Result};

/// ln ₀F₁(; b; z) for b > 0, z ≥ 0.
///
/// The series Σ zᵏ / ((b)ₖ k!) has positive terms with the ratio
/// r_k = z / ((b + k)(k + 1)), which decreases monotonically in k. Terms are
/// summed relative to the largest one (the first k with r_k < 1) so that
/// nothing overflows even when the value itself exceeds the f64 range.
pub fn ln_hyp0f1(b: f64, z: f64, ctl: SeriesControl) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::Domain(format!("hyp0f1 requires b > 0, got {b}")));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("hyp0f1 requires z >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let ratio = |k: usize| z / ((b + k as f64) * (k as f64 + 1.0));

    // ln of the peak term and the ratios leading up to it
    let mut peak = 0usize;
    let mut ln_peak = 0.0;
    let mut up_ratios = Vec::new();
    while ratio(peak) >= 1.0 {
        if peak >= ctl.max_terms() {
            return Err(Error::Convergence { max_terms: ctl.max_terms() });
        }
        let r = ratio(peak);
        ln_peak += r.ln();
        up_ratios.push(r);
        peak += 1;
    }

    // Terms below the peak, walking down: t_{k} = t_{k+1} / r_k.
    let mut below = 0.0;
    let mut t = 1.0;
    for &r in up_ratios.iter().rev() {
        t /= r;
        if t == 0.0 {
            break;
        }
        below += t;
    }

    // Terms above the peak until the geometric tail bound is negligible.
    let mut above = 0.0;
    let mut t = 1.0;
    let mut k = peak;
    loop {
        let r = ratio(k);
        t *= r;
        above += t;
        k += 1;
        let total = 1.0 + below + above;
        let r_next = ratio(k);
        let tail = t * r_next / (1.0 - r_next);
        if tail <= ctl.rel_tol() * total * 1e-2 || t == 0.0 {
            return Ok(ln_peak + total.ln());
        }
        if k >= ctl.max_terms() {
            return Err(Error::Convergence { max_terms: ctl.max_terms() });
        }
    }
}

/// ₀F₁(; b; z) for b > 0, z ≥ 0. Overflows to +inf for very large z; use
/// [`ln_hyp0f1`] there.
pub fn hyp0f1(b: f64, z: f64, ctl: SeriesControl) -> Result<f64> {
    ln_hyp0f1(b, z, ctl).map(f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    /// Forward partial sums of term products, compensated (Neumaier).
    fn brute_force(b: f64, z: f64, terms: usize) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        let mut term = 1.0f64;
        for k in 0..terms {
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            term *= z / ((b + k as f64) * (k as f64 + 1.0));
        }
        sum + comp
    }

    #[test]
    fn zero_argument() {
        assert_eq!(hyp0f1(7.0, 0.0, ctl()).unwrap(), 1.0);
    }

    #[test]
    fn sinh_identity() {
        // ₀F₁(3/2; x²/4) = sinh(x)/x
        let got = hyp0f1(1.5, 0.25, ctl()).unwrap();
        assert!((got - 1f64.sinh()).abs() < 1e-15);
        for x in [0.1f64, 3.0, 17.0, 60.0] {
            let got = hyp0f1(1.5, x * x / 4.0, ctl()).unwrap();
            let want = x.sinh() / x;
            assert!(((got - want) / want).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn matches_brute_force_partial_sums() {
        let want = brute_force(102.0, 590.0, 200);
        let got = hyp0f1(102.0, 590.0, ctl()).unwrap();
        assert!(((got - want) / want).abs() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn large_arguments_stay_finite_in_log_domain() {
        // b = 2 + 1/υ², z = J/υ² at υ = 1, J = 459 and at υ = 0.05, J = 500
        // references from mpmath at 30 digits
        let a = ln_hyp0f1(3.0, 459.0, ctl()).unwrap();
        assert!((a / 34.570_619_138_324_187 - 1.0).abs() < 1e-13, "{a}");
        let b = ln_hyp0f1(402.0, 200_000.0, ctl()).unwrap();
        assert!((b / 360.773_300_975_459_18 - 1.0).abs() < 1e-13, "{b}");
    }

    #[test]
    fn convergence_error_when_capped() {
        let small = SeriesControl::new(1e-14, 5).unwrap();
        assert!(matches!(hyp0f1(1.0, 1000.0, small), Err(Error::Convergence { .. })));
    }

    #[test]
    fn domain_errors() {
        assert!(hyp0f1(0.0, 1.0, ctl()).is_err());
        assert!(hyp0f1(1.0, -1.0, ctl()).is_err());
    }

    proptest! {
        #[test]
        fn strictly_increasing_in_z(b in 0.1f64..50.0, z in 0.0f64..300.0, dz in 0.01f64..10.0) {
            let lo = ln_hyp0f1(b, z, ctl()).unwrap();
            let hi = ln_hyp0f1(b, z + dz, ctl()).unwrap();
            prop_assert!(hi > lo);
        }
    }
}
