use linkmix::channels::{
    derive_turbulence, gg_pdf, Detection, EtaMuParams, FsoChannelParams, KappaMuParams, LinkGeometry,
};
use linkmix::oracles::stats::{chi_square, ks_critical_1pct, ks_statistic, ks_statistic_strided, mean_and_se};
use linkmix::oracles::{draw, sample_etamu, sample_gg_pointing, sample_kappamu};
use linkmix::quad::{integrate, Tolerance};
use linkmix::specfun::{meijer_g, GEvalOptions, GMethod, MeijerGSpec};

const N: u64 = 200_000;

/// `P(γ₂ ≤ x)` through the irradiance CDF
/// `ξ²/(Γ(a)Γ(b)) G^{3,1}_{2,4}(ab·I | 1, ξ²+1; ξ², a, b, 0)`.
fn fso_cdf(fso: &FsoChannelParams, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    let (a, b, x2) = (fso.a(), fso.b(), fso.xi() * fso.xi());
    let i = fso.d() * (x / fso.kappa_t()).powf(1.0 / fso.t() as f64);
    let spec = MeijerGSpec::new(3, 1, vec![1.0, x2 + 1.0], vec![x2, a, b, 0.0]).unwrap();
    let opts = GEvalOptions::default().with_method(GMethod::Hybrid);
    let g = meijer_g(&spec, a * b * i, &opts).unwrap();
    let ln_c = x2.ln() - linkmix::specfun::gamma::ln_gamma_pos(a) - linkmix::specfun::gamma::ln_gamma_pos(b);
    ln_c.exp() * g
}

fn links() -> Vec<FsoChannelParams> {
    let mut out = Vec::new();
    for cn2 in [1e-15, 9e-15, 3e-14] {
        for det in [Detection::Heterodyne, Detection::ImDd] {
            let geom = LinkGeometry { cn2, ..Default::default() };
            out.push(FsoChannelParams::from_geometry(&geom, 1.1, det, 10.0).unwrap());
        }
    }
    out
}

#[test]
fn etamu_sampler_matches_cdf() {
    for (i, &(eta, mu)) in [(0.5, 3u32), (0.9, 1), (0.2, 2), (0.95, 4)].iter().enumerate() {
        let rf = EtaMuParams::new(eta, mu, 10.0).unwrap();
        let mut s = draw(100 + i as u64, N, |r| sample_etamu(&rf, r));
        let d = ks_statistic(&mut s, |x| rf.cdf(x));
        assert!(d < ks_critical_1pct(N as f64), "eta={eta} mu={mu}: D = {d}");
    }
}

#[test]
fn kappamu_sampler_matches_cdf() {
    for (i, &(kappa, mu)) in [(3.0, 2.0), (1.5, 1.0), (0.0, 2.0), (5.0, 0.6)].iter().enumerate() {
        let rf = KappaMuParams::new(kappa, mu, 10.0).unwrap();
        let mut s = draw(200 + i as u64, N, |r| sample_kappamu(&rf, r));
        let d = ks_statistic(&mut s, |x| rf.cdf(x));
        assert!(d < ks_critical_1pct(N as f64), "kappa={kappa} mu={mu}: D = {d}");
    }
}

#[test]
fn fso_sampler_matches_cdf() {
    for (i, fso) in links().iter().enumerate() {
        let mut s = draw(300 + i as u64, N, |r| sample_gg_pointing(fso, r));
        // a conservative bound: 1e4 CDF evaluations instead of one per sample
        let d = ks_statistic_strided(&mut s, |x| fso_cdf(fso, x), 20);
        assert!(d < ks_critical_1pct(N as f64), "{fso:?}: D = {d}");
        let (mean, se) = mean_and_se(&s);
        assert!((mean - fso.gamma_bar2()).abs() < 4.0 * se, "mean {mean} ± {se}");
    }
}

#[test]
fn fso_histogram_chi_square() {
    let fso = &links()[3];
    let s = draw(7, N, |r| sample_gg_pointing(fso, r));
    let mut sorted = s.clone();
    sorted.sort_by(f64::total_cmp);
    let edges: Vec<f64> = (0..=20).map(|k| if k == 20 { f64::INFINITY } else { sorted[k * sorted.len() / 20] }).collect();
    let edges: Vec<f64> = std::iter::once(0.0).chain(edges.into_iter().skip(1)).collect();
    let (_, _, p) = chi_square(&s, &edges, |x| fso_cdf(fso, x));
    assert!(p > 0.01, "p = {p}");
}

#[test]
fn fso_density_is_the_cdf_derivative() {
    for fso in links() {
        for x in [0.5, 5.0, 20.0] {
            let h = 1e-4 * x;
            let fd = (fso_cdf(&fso, x + h) - fso_cdf(&fso, x - h)) / (2.0 * h);
            let pdf = gg_pdf(&fso, x).unwrap();
            assert!((fd - pdf).abs() < 1e-6 * pdf.max(1.0), "{fd} vs {pdf}");
        }
    }
}

#[test]
fn rf_densities_integrate_to_cdfs() {
    let tol = Tolerance::new(1e-13, 1e-11);
    let eta = EtaMuParams::new(0.3, 2, 4.0).unwrap();
    let kappa = KappaMuParams::new(2.0, 1.5, 4.0).unwrap();
    for x in [0.5, 3.0, 12.0] {
        let a = integrate(|g| eta.pdf(g), 0.0, x, tol).value;
        assert!((a - eta.cdf(x)).abs() < 1e-10);
        let b = integrate(|g| kappa.pdf(g), 0.0, x, tol).value;
        assert!((b - kappa.cdf(x)).abs() < 1e-10);
    }
}

#[test]
fn kappamu_series_bound_is_honest() {
    let rf = KappaMuParams::new(3.0, 2.0, 10.0).unwrap();
    for x in [0.5, 5.0, 30.0] {
        let exact = rf.cdf(x);
        for tol in [1e-3, 1e-6, 1e-9] {
            let s = rf.cdf_series(x, tol).unwrap();
            assert!((s.value - exact).abs() <= s.tail_bound + 1e-15 && s.tail_bound <= tol);
        }
    }
}

#[test]
fn turbulence_parameters_follow_cn2() {
    let mut prev = (f64::INFINITY, f64::INFINITY);
    for cn2 in [1e-15, 9e-15, 3e-14] {
        let t = derive_turbulence(&LinkGeometry { cn2, ..Default::default() }).unwrap();
        assert!(t.a < prev.0 && t.b < prev.1);
        prev = (t.a, t.b);
    }
    assert!(derive_turbulence(&LinkGeometry { cn2: -1.0, ..Default::default() }).is_err());
}
