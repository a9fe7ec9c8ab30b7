#![allow(clippy::excessive_precision)]

use linkmix::specfun::gamma::ln_gamma_pos;
use linkmix::specfun::{
    bessel_i, gamma_lower_reg, gamma_upper_reg, meijer_g, meijer_g_detailed, meijer_g_leading_residues, GEvalOptions,
    GMethod, MeijerGSpec,
};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// Reference values computed at 40 digits with mpmath.

#[test]
fn incomplete_gamma_references() {
    let cases = [
        (0.5, 0.3, 0.43857802608099986352),
        (2.5, 10.0, 0.0012497305630313754119),
        (30.0, 25.0, 0.8178960840225448902),
        (1.0, 1e-3, 0.99900049983337499165),
        (7.0, 0.5, 0.9999989976203971157),
    ];
    for (p, x, q) in cases {
        let got = gamma_upper_reg(p, x).unwrap();
        assert!(rel(got, q) < 1e-13, "Q({p}, {x}) = {got}, want {q}");
        let lower = gamma_lower_reg(p, x).unwrap();
        assert!((lower + got - 1.0).abs() < 1e-15);
    }
}

#[test]
fn bessel_and_log_gamma_references() {
    for (v, x, want) in [
        (0.5, 1.0, 0.93767488824548764672),
        (2.0, 30.0, 730436828561.38035642),
        (1.5, 1e-3, 8.4104425811114044675e-6),
        (7.0, 12.0, 2396.0356923993661015),
    ] {
        let got = bessel_i(v, x).unwrap();
        assert!(rel(got, want) < 1e-13, "I_{v}({x}) = {got}");
    }
    for (x, want) in [(0.1, 2.252712651734205902), (3.7, 1.4280723266653881292), (150.5, 602.51395487058541195)] {
        assert!(rel(ln_gamma_pos(x), want) < 1e-14);
    }
}

#[test]
fn meijer_references() {
    let (a, b) = (20.636939001356004, 20.000358856006955);
    let fso_like = MeijerGSpec::new(3, 0, vec![2.21], vec![1.21, a, b]).unwrap();
    let cases = [
        (fso_like.clone(), 0.01, 2.95588580828787380e29),
        (fso_like.clone(), 0.5, 3.36078985564964573e31),
        (fso_like.clone(), 3.0, 2.9376792156938333403e32),
        (fso_like.clone(), 5.0, 5.45056292299405615e32),
        (fso_like, 225.983205754362667, 4.94026455200608449e34),
        (MeijerGSpec::new(2, 1, vec![0.5], vec![0.3, 1.7]).unwrap(), 0.8, 0.58410008548555463939),
        (MeijerGSpec::new(3, 1, vec![0.0, 2.21], vec![1.21, 4.5, 3.2, -1.0]).unwrap(), 2.0, 2.4040550954172372865),
        (MeijerGSpec::new(3, 0, vec![], vec![0.0, 0.5, 1.0 / 3.0]).unwrap(), 7.5, 0.0089402641151770574449),
    ];
    for (spec, z, want) in cases {
        for method in [GMethod::Contour, GMethod::Hybrid, GMethod::Auto] {
            let opts = GEvalOptions::default().with_method(method);
            let got = meijer_g_detailed(&spec, z, &opts).unwrap();
            assert!(rel(got.value, want) < 1e-10, "{spec:?} z={z} {method:?}: {} vs {want}", got.value);
            assert!(got.abs_err >= 0.0);
        }
    }
}

#[test]
fn elementary_special_cases() {
    let opts = GEvalOptions::default();
    let exp = MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap();
    let bessel_k_half = MeijerGSpec::new(2, 0, vec![], vec![0.25, -0.25]).unwrap();
    let rational = MeijerGSpec::new(1, 1, vec![0.0], vec![0.0]).unwrap();
    for z in [1e-3, 0.2, 1.0, 4.0, 40.0] {
        assert!(rel(meijer_g(&exp, z, &opts).unwrap(), (-z).exp()) < 1e-10);
        // 2 K_{1/2}(2√z) = √π z^{-1/4} e^{-2√z}
        let k = std::f64::consts::PI.sqrt() * z.powf(-0.25) * (-2.0 * z.sqrt()).exp();
        assert!(rel(meijer_g(&bessel_k_half, z, &opts).unwrap(), k) < 1e-10);
        assert!(rel(meijer_g(&rational, z, &opts).unwrap(), 1.0 / (1.0 + z)) < 1e-10);
    }
}

#[test]
fn leading_residues_are_the_small_argument_limit() {
    let spec = MeijerGSpec::new(3, 0, vec![2.21], vec![1.21, 3.5, 2.8]).unwrap();
    let opts = GEvalOptions::default();
    let mut prev = f64::INFINITY;
    for z in [1e-2, 1e-3, 1e-4, 1e-5] {
        let exact = meijer_g(&spec, z, &opts).unwrap();
        let lead = meijer_g_leading_residues(&spec, z, opts.pole_separation_min).unwrap();
        let r = rel(lead, exact);
        assert!(r < prev, "z = {z}: {r}");
        prev = r;
    }
    assert!(prev < 1e-4);
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(MeijerGSpec::new(3, 0, vec![], vec![0.0, 1.0]).is_err());
    assert!(MeijerGSpec::new(0, 2, vec![0.0], vec![0.0]).is_err());
    let spec = MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap();
    assert!(meijer_g(&spec, -1.0, &GEvalOptions::default()).is_err());
    assert!(gamma_upper_reg(-1.0, 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // z^c G(z | a; b) = G(z | a + c; b + c)
    #[test]
    fn argument_power_shift(b1 in 0.2f64..4.0, b2 in 0.2f64..4.0, b3 in 0.2f64..4.0, a1 in 4.5f64..6.0, c in -0.5f64..1.5, z in 0.05f64..20.0) {
        let opts = GEvalOptions::default();
        let g = meijer_g(&MeijerGSpec::new(3, 0, vec![a1], vec![b1, b2, b3]).unwrap(), z, &opts).unwrap();
        let shifted = MeijerGSpec::new(3, 0, vec![a1 + c], vec![b1 + c, b2 + c, b3 + c]).unwrap();
        let h = meijer_g(&shifted, z, &opts).unwrap();
        prop_assert!(rel(z.powf(c) * g, h) < 1e-9, "{} vs {}", z.powf(c) * g, h);
    }

    // G(1/z | a; b) = G(z | 1 − b; 1 − a) with m ↔ n, p ↔ q
    #[test]
    fn inversion(b1 in 0.1f64..3.0, b2 in 0.1f64..3.0, a1 in -0.9f64..0.0, z in 0.1f64..10.0) {
        let opts = GEvalOptions::default();
        let g = meijer_g(&MeijerGSpec::new(2, 1, vec![a1], vec![b1, b2]).unwrap(), 1.0 / z, &opts).unwrap();
        let inv = MeijerGSpec::new(1, 2, vec![1.0 - b1, 1.0 - b2], vec![1.0 - a1]).unwrap();
        let h = meijer_g(&inv, z, &opts).unwrap();
        prop_assert!(rel(g, h) < 1e-9, "{g} vs {h}");
    }

    #[test]
    fn incomplete_gamma_recurrence(p in 0.3f64..40.0, x in 0.01f64..60.0) {
        // Q(p+1, x) = Q(p, x) + x^p e^{-x}/Γ(p+1)
        let lhs = gamma_upper_reg(p + 1.0, x).unwrap();
        let rhs = gamma_upper_reg(p, x).unwrap() + (p * x.ln() - x - ln_gamma_pos(p + 1.0)).exp();
        prop_assert!((lhs - rhs).abs() < 1e-13 * lhs.max(1e-300) + 1e-300, "{lhs} vs {rhs}");
    }
}
