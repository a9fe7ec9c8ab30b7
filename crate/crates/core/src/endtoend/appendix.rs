//! `∫₀^∞ x^{−α−1} e^{−σ/x} G^{m,n}_{p,q}(ω x^{u/v}) dx` in closed form.

use crate::error::{domain, Result};
use crate::specfun::meijer::{meijer_g_detailed, GEvalOptions, MeijerGSpec};

use super::kernel::delta;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Closed form of `∫₀^∞ x^{−α−1} e^{−σ/x} G^{m,n}_{p,q}(ω x^{u/v} | a; b) dx`:
///
/// `v^s u^{α−1/2} σ^{−α} / (2π)^{(u−1)/2 + c*(v−1)}
///  · G^{vm+u, vn}_{vp, vq+u}(ω^v σ^u / (u^u v^{v(q−p)}) | Δ(v,a); Δ(u,α), Δ(v,b))`
///
/// with `s = Σ(1−a) − Σ(1−b) + (q−p)/2 + 1` and `c* = m + n − (p+q)/2`.
pub fn mellin_exp_g_integral(alpha: f64, sigma: f64, omega: f64, u: u32, v: u32, spec: &MeijerGSpec) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(domain(format!("sigma must be positive, got {sigma}")));
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(domain(format!("omega must be positive, got {omega}")));
    }
    if !alpha.is_finite() {
        return Err(domain("alpha must be finite"));
    }
    if u == 0 || v == 0 || gcd(u, v) != 1 {
        return Err(domain(format!("u and v must be coprime positive integers, got u = {u}, v = {v}")));
    }
    let (m, n, p, q) = (spec.m(), spec.n(), spec.p(), spec.q());
    let c_star = (m + n) as f64 - (p + q) as f64 / 2.0;
    if c_star <= 0.0 {
        return Err(domain(format!("integral needs c* > 0, got {c_star}")));
    }
    // large-x behaviour G(y) ~ y^{a_k − 1}, k < n
    let ratio = u as f64 / v as f64;
    if let Some(worst) = spec.a()[..n].iter().map(|a| ratio * (a - 1.0)).reduce(f64::max) {
        if alpha <= worst {
            return Err(domain(format!("integral diverges at infinity: need alpha > {worst}, got {alpha}")));
        }
    }

    let a = spec.a();
    let b = spec.b();
    let s = a.iter().map(|x| 1.0 - x).sum::<f64>() - b.iter().map(|x| 1.0 - x).sum::<f64>() + (q as f64 - p as f64) / 2.0 + 1.0;
    let (uf, vf) = (u as f64, v as f64);

    let mut new_a = Vec::with_capacity(v as usize * p);
    for &x in a {
        new_a.extend(delta(v, x));
    }
    let mut new_b: Vec<f64> = delta(u, alpha).collect();
    for &x in &b[..m] {
        new_b.extend(delta(v, x));
    }
    for &x in &b[m..] {
        new_b.extend(delta(v, x));
    }
    let big = MeijerGSpec::new(v as usize * m + u as usize, v as usize * n, new_a, new_b)?;

    let ln_z = vf * omega.ln() + uf * sigma.ln() - uf * uf.ln() - vf * (q as f64 - p as f64) * vf.ln();
    let ln_pref = s * vf.ln() + (alpha - 0.5) * uf.ln() - alpha * sigma.ln()
        - ((uf - 1.0) / 2.0 + c_star * (vf - 1.0)) * (2.0 * std::f64::consts::PI).ln();
    let g = meijer_g_detailed(&big, ln_z.exp(), &GEvalOptions::default())?;
    Ok(g.scaled_by(ln_pref).0)
}
