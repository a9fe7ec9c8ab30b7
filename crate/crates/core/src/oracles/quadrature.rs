//! Direct numerical integration of the defining integrals.

use std::cell::{Cell, RefCell};

use super::Estimate;
use crate::channels::{gg_pdf_with, FsoChannelParams};
use crate::endtoend::{ModulationScheme, SystemConfig};
use crate::error::{domain, Error, Result};
use crate::quad::{integrate_breaks, Tolerance};
use crate::specfun::gamma::ln_gamma_pos;
use crate::specfun::meijer::{GEvalOptions, GMethod};

/// Reported absolute error above which the quadrature is declared stalled.
pub const STALL_LIMIT: f64 = 1e-5;

fn tolerance() -> Tolerance {
    Tolerance::new(1e-9, 1e-8).with_max_evals(400_000)
}

/// Density evaluations only need to beat the integration tolerance.
fn density_opts() -> GEvalOptions {
    GEvalOptions::default().with_rel_tol(1e-9).with_method(GMethod::Hybrid)
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

/// `E_{γ₂}[h(γ₂)]` over the FSO density, using `γ₂ = e^u`.
fn expect_over_fso(fso: &FsoChannelParams, h: impl Fn(f64) -> f64) -> Result<(f64, f64, usize)> {
    let err: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |u: f64| {
        let g2 = u.exp();
        match gg_pdf_with(fso, g2, &density_opts()) {
            Ok(f) if f > 0.0 => f * g2 * h(g2),
            Ok(_) => 0.0,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let t = fso.t() as f64;
    let centre = fso.kappa_t().ln();
    let (lo, hi) = (centre - 100.0, centre + 10.0 * t + 2.0);
    let r = integrate_breaks(integrand, &grid(lo, hi, 4.0), tolerance());
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    // left tail decays like e^{ρu}
    let rho = [fso.xi() * fso.xi(), fso.a(), fso.b()].into_iter().fold(f64::INFINITY, f64::min) / t;
    let left = integrand_at(fso, &h, lo).abs() / rho;
    let right = integrand_at(fso, &h, hi).abs();
    let abs_err = r.abs_err + left + right;
    if !r.value.is_finite() || abs_err > STALL_LIMIT {
        return Err(Error::NonConvergence(format!("quadrature stalled: value {} error {abs_err:e}", r.value)));
    }
    Ok((r.value, abs_err, r.evals))
}

fn integrand_at(fso: &FsoChannelParams, h: &impl Fn(f64) -> f64, u: f64) -> f64 {
    let g2 = u.exp();
    gg_pdf_with(fso, g2, &density_opts()).map(|f| f * g2 * h(g2)).unwrap_or(0.0)
}

/// `F(γ) = ∫ F₁(γ(1 + c/γ₂)) f₂(γ₂) dγ₂`.
pub fn quad_cdf(rf_cdf: impl Fn(f64) -> f64, fso: &FsoChannelParams, sys: &SystemConfig, gamma: f64) -> Result<Estimate> {
    sys.validate()?;
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(domain(format!("SNR argument must be non-negative, got {gamma}")));
    }
    if gamma == 0.0 {
        return Ok(Estimate { value: 0.0, std_error: 0.0, n: 0 });
    }
    let (v, e, n) = expect_over_fso(fso, |g2| rf_cdf(gamma * (1.0 + sys.c / g2)))?;
    Ok(Estimate { value: v.clamp(0.0, 1.0), std_error: e, n: n as u64 })
}

/// `P_b = q^p/(2Γ(p)) ∫ e^{−qγ} γ^{p−1} F(γ) dγ` for an arbitrary CDF.
pub fn quad_ber(cdf: impl Fn(f64) -> f64, modulation: &ModulationScheme) -> Result<Estimate> {
    let (v, e, n) = ber_integral(&cdf, modulation.p, modulation.q)?;
    Ok(Estimate { value: v.clamp(0.0, 0.5), std_error: e, n: n as u64 })
}

fn ber_integral(cdf: &impl Fn(f64) -> f64, p: f64, q: f64) -> Result<(f64, f64, usize)> {
    if !(p > 0.0 && q > 0.0) {
        return Err(domain(format!("modulation parameters must be positive, got p = {p}, q = {q}")));
    }
    let ln_head = -(2f64.ln()) - ln_gamma_pos(p);
    // γ = e^v / q turns the kernel into e^{pv − e^v} / (2Γ(p))
    let integrand = |v: f64| {
        let x = v.exp();
        (ln_head + p * v - x).exp() * cdf(x / q)
    };
    let (lo, hi) = (-60.0 / p.min(1.0), 6.0);
    let r = integrate_breaks(integrand, &grid(lo, hi, 6.0), tolerance());
    let left = integrand(lo).abs() / p;
    Ok((r.value, r.abs_err + left, r.evals))
}

/// BER of the relayed link: the unified BER integral of the RF CDF nested
/// inside the expectation over `γ₂`. Avoids evaluating the end-to-end CDF by
/// quadrature at every outer node.
pub fn quad_ber_relay(
    rf_cdf: impl Fn(f64) -> f64,
    fso: &FsoChannelParams,
    sys: &SystemConfig,
    modulation: &ModulationScheme,
) -> Result<Estimate> {
    sys.validate()?;
    let (p, q) = (modulation.p, modulation.q);
    // For fixed γ₂ the RF CDF is scaled by k = 1 + c/γ₂: this is the RF BER at q/k.
    let inner_err = Cell::new(0.0f64);
    let inner_fail: RefCell<Option<Error>> = RefCell::new(None);
    let h = |g2: f64| {
        let k = 1.0 + sys.c / g2;
        match ber_integral(&rf_cdf, p, q / k) {
            Ok((v, e, _)) => {
                inner_err.set(inner_err.get().max(e));
                v
            }
            Err(e) => {
                inner_fail.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let (v, e, n) = expect_over_fso(fso, h)?;
    if let Some(e) = inner_fail.into_inner() {
        return Err(e);
    }
    Ok(Estimate { value: v.clamp(0.0, 0.5), std_error: e + inner_err.get(), n: n as u64 })
}
