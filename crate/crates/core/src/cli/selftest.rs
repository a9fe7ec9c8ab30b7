//! Quick invariant checks run by `linkmix selftest`.

use std::f64::consts::PI;

use crate::channels::{Detection, EtaMuParams, FsoChannelParams, KappaMuParams, LinkGeometry, RfFading};
use crate::endtoend::{self, mellin_exp_g_integral, ModulationScheme, SystemConfig};
use crate::error::Result;
use crate::oracles::{self, McConfig};
use crate::specfun::{meijer_g, GEvalOptions, MeijerGSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn check(name: &'static str, r: Result<(bool, String)>) -> Check {
    match r {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

fn db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

fn link(gbar2_db: f64) -> Result<FsoChannelParams> {
    let geom = LinkGeometry { cn2: 9e-15, ..Default::default() };
    FsoChannelParams::from_geometry(&geom, 1.1, Detection::Heterodyne, db(gbar2_db))
}

fn special_cases() -> Result<(bool, String)> {
    let opts = GEvalOptions::default();
    let mut worst: f64 = 0.0;
    let z = 0.7;
    let exp = MeijerGSpec::new(1, 0, vec![], vec![0.0])?;
    worst = worst.max(rel(meijer_g(&exp, z, &opts)?, (-z).exp()));
    // 2 K_{1/2}(2√z) = √π z^{-1/4} e^{-2√z}
    let k = MeijerGSpec::new(2, 0, vec![], vec![0.25, -0.25])?;
    worst = worst.max(rel(meijer_g(&k, z, &opts)?, PI.sqrt() * z.powf(-0.25) * (-2.0 * z.sqrt()).exp()));
    let r = MeijerGSpec::new(1, 1, vec![0.0], vec![0.0])?;
    worst = worst.max(rel(meijer_g(&r, z, &opts)?, 1.0 / (1.0 + z)));
    Ok((worst < 1e-10, format!("max rel err {worst:.2e}")))
}

fn cdf_pdf_consistency() -> Result<(bool, String)> {
    let rf = RfFading::EtaMu(EtaMuParams::new(0.5, 3, db(10.0))?);
    let fso = link(20.0)?;
    let sys = SystemConfig::default();
    let (g, h) = (2.0, 1e-4);
    let up = endtoend::cdf(&rf, &fso, &sys, g + h, 1e-10)?.value;
    let dn = endtoend::cdf(&rf, &fso, &sys, g - h, 1e-10)?.value;
    let pdf = endtoend::pdf(&rf, &fso, &sys, g, 1e-10)?.value;
    let fd = (up - dn) / (2.0 * h);
    let err = (fd - pdf).abs();
    Ok((err <= 1e-6f64.max(1e-4 * pdf), format!("|FD - pdf| = {err:.2e}")))
}

fn closed_vs_quadrature() -> Result<(bool, String)> {
    let rf = RfFading::KappaMu(KappaMuParams::new(3.0, 2.0, db(10.0))?);
    let fso = link(10.0)?;
    let sys = SystemConfig::default();
    let cf = endtoend::outage(&rf, &fso, &sys, 1e-10)?.value;
    let q = oracles::quad_cdf(|g| rf.cdf(g), &fso, &sys, sys.gamma_th)?.value;
    let d = (cf - q).abs();
    Ok((d <= 1e-5, format!("closed {cf:.10e}, quad {q:.10e}")))
}

fn closed_vs_monte_carlo() -> Result<(bool, String)> {
    let rf = RfFading::EtaMu(EtaMuParams::new(0.5, 3, db(10.0))?);
    let fso = link(10.0)?;
    let sys = SystemConfig::default();
    let cf = endtoend::outage(&rf, &fso, &sys, 1e-10)?.value;
    let mc = oracles::mc_outage(&rf, &fso, &sys, &McConfig::new(42, 200_000))?;
    let z = (cf - mc.value).abs() / mc.std_error;
    Ok((z <= 3.0, format!("closed {cf:.6e}, mc {:.6e} ± {:.1e} ({z:.2} SE)", mc.value, mc.std_error)))
}

fn nakagami_reduction() -> Result<(bool, String)> {
    let fso = link(10.0)?;
    let sys = SystemConfig::default();
    let k = KappaMuParams::new(1e-9, 2.0, db(10.0))?;
    let a = endtoend::cdf_kappamu_gg(&k, &fso, &sys, 1.0, 1e-12)?.value;
    let b = endtoend::cdf_nakagami_gg(2, db(10.0), &fso, &sys, 1.0)?.value;
    let r = rel(a, b);
    Ok((r < 1e-8, format!("rel diff {r:.2e}")))
}

fn monotone_in_fso_snr() -> Result<(bool, String)> {
    let rf = RfFading::EtaMu(EtaMuParams::new(0.9, 1, db(10.0))?);
    let sys = SystemConfig::default();
    let mut prev: Option<endtoend::EvalResult> = None;
    for x in (0..=50).step_by(10) {
        let cur = endtoend::outage(&rf, &link(x as f64)?, &sys, 1e-10)?;
        if let Some(p) = &prev {
            if !(p.value - cur.value > p.abs_error_est + cur.abs_error_est) {
                return Ok((false, format!("not decreasing at {x} dB")));
            }
        }
        prev = Some(cur);
    }
    Ok((true, "strictly decreasing over 0..50 dB".into()))
}

fn coherent_beats_noncoherent() -> Result<(bool, String)> {
    let rf = RfFading::EtaMu(EtaMuParams::new(0.5, 3, db(20.0))?);
    let fso = link(10.0)?;
    let sys = SystemConfig::default();
    let c = endtoend::ber(&rf, &fso, &sys, &ModulationScheme::cbfsk(), 1e-10)?;
    let n = endtoend::ber(&rf, &fso, &sys, &ModulationScheme::nbfsk(), 1e-10)?;
    Ok((n.value - c.value > c.abs_error_est + n.abs_error_est, format!("CBFSK {:.4e} < NBFSK {:.4e}", c.value, n.value)))
}

fn asymptote() -> Result<(bool, String)> {
    let rf = RfFading::EtaMu(EtaMuParams::new(0.9, 1, db(10.0))?);
    let fso = FsoChannelParams::from_geometry(&LinkGeometry { cn2: 1e-15, ..Default::default() }, 1.1, Detection::Heterodyne, db(60.0))?;
    let sys = SystemConfig::default();
    let exact = endtoend::outage(&rf, &fso, &sys, 1e-10)?.value;
    let asym = endtoend::outage_asymptotic(&rf, &fso, &sys, 1e-10)?;
    let r = rel(asym, exact);
    Ok((r < 0.05, format!("rel deviation {r:.2e} at 60 dB")))
}

fn appendix_identity() -> Result<(bool, String)> {
    let (alpha, sigma, omega) = (0.5, 1.3, 0.8);
    let spec = MeijerGSpec::new(1, 0, vec![], vec![0.0])?;
    let closed = mellin_exp_g_integral(alpha, sigma, omega, 1, 1, &spec)?;
    // 2 (ω/σ)^{α/2} K_α(2√(σω)) with K_{1/2}(y) = √(π/2y) e^{-y}
    let y = 2.0 * (sigma * omega).sqrt();
    let reference = 2.0 * (omega / sigma).powf(alpha / 2.0) * (PI / (2.0 * y)).sqrt() * (-y).exp();
    let r = rel(closed, reference);
    Ok((r < 1e-6, format!("rel diff {r:.2e}")))
}

/// Runs every check; never panics on numerical failure.
pub fn run_selftest() -> Vec<Check> {
    vec![
        check("meijer special cases", special_cases()),
        check("cdf/pdf finite difference", cdf_pdf_consistency()),
        check("closed form vs quadrature", closed_vs_quadrature()),
        check("closed form vs monte carlo", closed_vs_monte_carlo()),
        check("nakagami reduction", nakagami_reduction()),
        check("outage decreasing in fso snr", monotone_in_fso_snr()),
        check("cbfsk below nbfsk", coherent_beats_noncoherent()),
        check("high-snr asymptote", asymptote()),
        check("appendix identity", appendix_identity()),
    ]
}
