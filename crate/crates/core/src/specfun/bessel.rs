//! Modified Bessel function of the first kind from its ascending series.

use crate::error::{domain, Result};
use crate::specfun::gamma::ln_gamma_pos;

const REL_TOL: f64 = 1e-16;

/// `ln I_v(x)` for `v >= 0`, `x > 0`. Terms are summed relative to the
/// largest one so the result never overflows.
pub fn ln_bessel_i(v: f64, x: f64) -> Result<f64> {
    if !(v >= 0.0) {
        return Err(domain(format!("Bessel I order must be >= 0, got {v}")));
    }
    if !(x > 0.0) {
        return Err(domain(format!("ln I_v(x) needs x > 0, got {x}")));
    }
    let half = 0.5 * x;
    let lh = half.ln();
    let q = half * half;
    let log_term = |k: f64| (2.0 * k + v) * lh - ln_gamma_pos(k + 1.0) - ln_gamma_pos(k + v + 1.0);

    // ratio t_{k+1}/t_k = q / ((k+1)(k+v+1)) drops below one past the peak
    let peak = (0.5 * (-(v + 2.0) + ((v + 2.0).powi(2) - 4.0 * (v + 1.0 - q)).max(0.0).sqrt()))
        .max(0.0)
        .ceil();
    let l_max = log_term(peak);

    let mut sum = 0.0;
    // downwards from the peak
    let mut k = peak;
    let mut t = 1.0;
    loop {
        sum += t;
        if k == 0.0 {
            break;
        }
        t *= k * (k + v) / q;
        k -= 1.0;
        if t < REL_TOL * sum {
            break;
        }
    }
    // upwards from the peak, with a geometric tail bound
    let mut k = peak;
    let mut t = 1.0;
    loop {
        let r = q / ((k + 1.0) * (k + v + 1.0));
        t *= r;
        k += 1.0;
        sum += t;
        if r < 1.0 && t * r / (1.0 - r) < REL_TOL * sum {
            break;
        }
    }
    Ok(l_max + sum.ln())
}

/// `I_v(x)` for `v >= 0`, `x >= 0`.
pub fn bessel_i(v: f64, x: f64) -> Result<f64> {
    if !(v >= 0.0) {
        return Err(domain(format!("Bessel I order must be >= 0, got {v}")));
    }
    if !(x >= 0.0) {
        return Err(domain(format!("Bessel I argument must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if v == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(ln_bessel_i(v, x)?.exp())
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    #[test]
    fn at_zero() {
        assert_eq!(bessel_i(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn reference_values() {
        // 30-digit ascending-series references
        assert!((bessel_i(1.0, 1.0).unwrap() - 0.565_159_103_992_485_03).abs() < 1e-15);
        // I_{1/2}(x) = sqrt(2/(πx)) sinh x
        for &x in &[0.3, 2.0, 17.0] {
            let e = (2.0 / (std::f64::consts::PI * x)).sqrt() * f64::sinh(x);
            let v = bessel_i(0.5, x).unwrap();
            assert!((v - e).abs() < 1e-13 * e);
        }
    }

    #[test]
    fn large_argument_stays_finite() {
        // I_0(x) ~ e^x / sqrt(2πx)
        let x = 2000.0;
        let l = ln_bessel_i(0.0, x).unwrap();
        let asym = x - 0.5 * (2.0 * std::f64::consts::PI * x).ln() + (1.0 + 1.0 / (8.0 * x)).ln();
        assert!((l - asym).abs() < 1e-6);
    }

    #[test]
    fn negative_inputs() {
        assert!(bessel_i(1.0, -1.0).is_err());
        assert!(bessel_i(-0.5, 1.0).is_err());
    }
}
