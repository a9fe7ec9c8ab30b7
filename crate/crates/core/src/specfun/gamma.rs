//! Log-gamma on the real line and in the complex plane.
//!
//! Lanczos approximation (g = 7, nine coefficients) for `Re z >= 1/2`,
//! reflection below. Relative accuracy of `exp(ln_gamma)` is close to
//! machine precision for moderate arguments.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Principal-branch `ln Γ(z)`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        return Err(Error::Pole(z.re));
    }
    Ok(ln_gamma_unchecked(z))
}

pub(crate) fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z) Γ(1 - z) = π / sin(πz)
        Complex64::new(LN_PI, 0.0) - ln_sin_pi(z) - ln_gamma_unchecked(1.0 - z)
    } else {
        let z = z - 1.0;
        let mut x = Complex64::new(LANCZOS[0], 0.0);
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            x += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        LN_SQRT_2PI + (z + 0.5) * t.ln() - t + x.ln()
    }
}

/// `ln sin(πz)`, stable for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 1.0 {
        // reduce by the nearest integer so sin is accurate next to its zeros
        let k = z.re.round();
        let r = Complex64::new(z.re - k, z.im);
        let v = (r * PI).sin().ln();
        return if k.rem_euclid(2.0) == 0.0 { v } else { v + Complex64::new(0.0, PI) };
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(πz) = (i/2) e^{-iπz} (1 - e^{2iπz}), |e^{2iπz}| = e^{-2π Im z} < 1
    let i = Complex64::i();
    let e2 = (2.0 * PI * i * z).exp();
    Complex64::new(-std::f64::consts::LN_2, PI / 2.0) - i * PI * z + (1.0 - e2).ln()
}

/// `sin(πx)` with argument reduction, exact to rounding near integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let k = x.round();
    let v = (PI * (x - k)).sin();
    if k.rem_euclid(2.0) == 0.0 {
        v
    } else {
        -v
    }
}

/// `ln |Γ(x)|` and the sign of `Γ(x)` for real `x`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    Ok(ln_gamma_signed_unchecked(x))
}

pub(crate) fn ln_gamma_signed_unchecked(x: f64) -> (f64, f64) {
    if x < 0.5 {
        let s = sin_pi(x);
        let (lg, sg) = ln_gamma_signed_unchecked(1.0 - x);
        (LN_PI - s.abs().ln() - lg, s.signum() * sg)
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (LN_SQRT_2PI + (z + 0.5) * t.ln() - t + acc.ln(), 1.0)
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ln_gamma_signed_unchecked(x).0
}

/// `Γ(x)` for real `x` (overflows to infinity past 171).
pub fn gamma(x: f64) -> Result<f64> {
    let (lg, s) = ln_gamma_signed(x)?;
    Ok(s * lg.exp())
}

/// Upper envelope of `ln |1/Γ(x)|` that ignores the zeros of `1/Γ` on the
/// negative axis. Used to place contours.
pub(crate) fn ln_recip_gamma_envelope(x: f64) -> f64 {
    if x >= 0.5 {
        -ln_gamma_pos(x)
    } else {
        ln_gamma_pos(1.0 - x) - LN_PI
    }
}

/// `ln n!`.
pub fn ln_factorial(n: u32) -> f64 {
    ln_gamma_pos(n as f64 + 1.0)
}
