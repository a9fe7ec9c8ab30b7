#![allow(clippy::excessive_precision)]

use linkmix::channels::{Detection, EtaMuParams, FsoChannelParams, KappaMuParams, LinkGeometry, RfFading};
use linkmix::endtoend::{self, ModulationScheme, SystemConfig};
use proptest::prelude::*;

fn db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

fn fso(cn2: f64, xi: f64, t: u32, gbar2_db: f64) -> FsoChannelParams {
    let geom = LinkGeometry { cn2, ..Default::default() };
    FsoChannelParams::from_geometry(&geom, xi, Detection::from_t(t).unwrap(), db(gbar2_db)).unwrap()
}

fn etamu(eta: f64, mu: u32) -> RfFading {
    RfFading::EtaMu(EtaMuParams::new(eta, mu, db(10.0)).unwrap())
}

fn kappamu(kappa: f64, mu: f64) -> RfFading {
    RfFading::KappaMu(KappaMuParams::new(kappa, mu, db(10.0)).unwrap())
}

// Direct 30-digit integration of P(γ₁γ₂/(c+γ₂) < γ_th) over the two marginal
// densities.
#[test]
fn outage_matches_high_precision_references() {
    let cases = [
        (etamu(0.5, 3), fso(9e-15, 1.1, 1, 10.0), 1.0, 1.0, 0.0094472013366407880393),
        (kappamu(3.0, 2.0), fso(1e-15, 1.1, 2, 20.0), 1.0, 1.0, 0.014987979402781193249),
        (etamu(0.9, 1), fso(3e-14, 2.5, 1, 30.0), 1.5, 2.0, 0.062590193162844432667),
        (kappamu(1.5, 1.0), fso(9e-15, 1.1, 1, 0.0), 1.0, 1.0, 0.2494041454984891871),
    ];
    for (rf, link, c, gth, reference) in cases {
        let sys = SystemConfig::new(c, gth).unwrap();
        let r = endtoend::outage(&rf, &link, &sys, 1e-12).unwrap();
        let diff = (r.value - reference).abs();
        println!("{reference:.16e} {:.16e} {diff:.1e} est {:.1e}", r.value, r.abs_error_est);
        assert!(diff <= 1e-10 && diff <= 10.0 * r.abs_error_est.max(1e-12), "{rf:?}: {} vs {reference} ({diff:e})", r.value);
    }
}

fn arb_rf() -> impl Strategy<Value = RfFading> {
    prop_oneof![
        (0.05f64..0.95, 1u32..5).prop_map(|(eta, mu)| etamu(eta, mu)),
        (0.0f64..5.0, 1u32..4).prop_map(|(kappa, mu)| kappamu(kappa, mu as f64)),
    ]
}

fn arb_fso() -> impl Strategy<Value = FsoChannelParams> {
    (prop::sample::select(vec![1e-15, 9e-15, 3e-14]), 0.8f64..8.0, 1u32..3, 0.0f64..50.0)
        .prop_map(|(cn2, xi, t, g)| fso(cn2, xi, t, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn outage_is_a_probability(rf in arb_rf(), link in arb_fso(), gth_db in -10.0f64..20.0) {
        let sys = SystemConfig::new(1.0, db(gth_db)).unwrap();
        let r = endtoend::outage(&rf, &link, &sys, 1e-10).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.value), "{r:?}");
        prop_assert!((r.value - r.raw_value).abs() <= r.abs_error_est);
    }

    #[test]
    fn cdf_is_non_decreasing(rf in arb_rf(), link in arb_fso(), g in 0.05f64..20.0) {
        let sys = SystemConfig::default();
        let lo = endtoend::cdf(&rf, &link, &sys, g, 1e-10).unwrap();
        let hi = endtoend::cdf(&rf, &link, &sys, 1.5 * g, 1e-10).unwrap();
        prop_assert!(hi.value >= lo.value - lo.abs_error_est - hi.abs_error_est);
    }

    #[test]
    fn pdf_is_the_cdf_derivative(rf in arb_rf(), link in arb_fso(), g in 0.1f64..10.0) {
        let sys = SystemConfig::default();
        let h = 1e-4 * g;
        let up = endtoend::cdf(&rf, &link, &sys, g + h, 1e-12).unwrap().value;
        let dn = endtoend::cdf(&rf, &link, &sys, g - h, 1e-12).unwrap().value;
        let pdf = endtoend::pdf(&rf, &link, &sys, g, 1e-12).unwrap().value;
        let fd = (up - dn) / (2.0 * h);
        prop_assert!((fd - pdf).abs() <= 1e-6f64.max(1e-4 * pdf), "fd {fd} pdf {pdf}");
    }

    #[test]
    fn ber_is_bounded_and_ordered(rf in arb_rf(), link in arb_fso()) {
        let sys = SystemConfig::default();
        let get = |m: ModulationScheme| endtoend::ber(&rf, &link, &sys, &m, 1e-10).unwrap();
        let (cbfsk, nbfsk, dbpsk) = (get(ModulationScheme::cbfsk()), get(ModulationScheme::nbfsk()), get(ModulationScheme::dbpsk()));
        for r in [&cbfsk, &nbfsk, &dbpsk] {
            prop_assert!((0.0..=0.5).contains(&r.value));
        }
        // same p, larger q
        prop_assert!(dbpsk.value <= nbfsk.value + dbpsk.abs_error_est + nbfsk.abs_error_est);
    }

    #[test]
    fn eta_and_its_reciprocal_agree(eta in 0.05f64..0.95, mu in 1u32..4, link in arb_fso()) {
        let sys = SystemConfig::default();
        let a = endtoend::outage(&etamu(eta, mu), &link, &sys, 1e-10).unwrap();
        let b = endtoend::outage(&etamu(1.0 / eta, mu), &link, &sys, 1e-10).unwrap();
        prop_assert!((a.value - b.value).abs() <= 2.0 * (a.abs_error_est + b.abs_error_est) + 1e-12);
    }
}

#[test]
fn outage_decreases_with_fso_snr() {
    let sys = SystemConfig::default();
    for rf in [etamu(0.5, 3), kappamu(3.0, 2.0)] {
        let vals: Vec<_> = (0..=10)
            .map(|i| endtoend::outage(&rf, &fso(1e-15, 1.1, 1, 5.0 * i as f64), &sys, 1e-10).unwrap())
            .collect();
        for w in vals.windows(2) {
            assert!(w[0].value - w[1].value > w[0].abs_error_est + w[1].abs_error_est);
        }
    }
}

#[test]
fn large_xi_approaches_no_pointing() {
    let sys = SystemConfig::default();
    let rf = etamu(0.5, 3);
    for t in [1, 2] {
        let far = fso(9e-15, f64::INFINITY, t, 20.0);
        let near = fso(9e-15, 300.0, t, 20.0);
        let a = endtoend::outage(&rf, &far, &sys, 1e-10).unwrap().value;
        let b = endtoend::outage(&rf, &near, &sys, 1e-10).unwrap().value;
        assert!((a - b).abs() < 1e-4 * a, "t = {t}: {a} vs {b}");
        let m = ModulationScheme::dbpsk();
        let a = endtoend::ber(&rf, &far, &sys, &m, 1e-10).unwrap().value;
        let b = endtoend::ber(&rf, &near, &sys, &m, 1e-10).unwrap().value;
        assert!((a - b).abs() < 1e-3 * a, "t = {t}: {a} vs {b}");
    }
}

#[test]
fn rayleigh_and_nakagami_reductions() {
    let sys = SystemConfig::default();
    let link = fso(9e-15, 1.1, 1, 15.0);
    for m in [1u32, 2, 3] {
        let k = KappaMuParams::new(1e-9, m as f64, db(10.0)).unwrap();
        let a = endtoend::cdf_kappamu_gg(&k, &link, &sys, 1.0, 1e-12).unwrap().value;
        let b = endtoend::cdf_nakagami_gg(m, db(10.0), &link, &sys, 1.0).unwrap().value;
        assert!((a - b).abs() <= 1e-8 * b, "m = {m}: {a} vs {b}");
    }
    let a = endtoend::cdf_rayleigh_gg(db(10.0), &link, &sys, 1.0).unwrap().value;
    let b = endtoend::cdf_nakagami_gg(1, db(10.0), &link, &sys, 1.0).unwrap().value;
    assert!((a - b).abs() <= 1e-12 * b);
}

#[test]
fn asymptote_tightens_with_snr() {
    let sys = SystemConfig::default();
    for rf in [etamu(0.9, 2), kappamu(1.0, 2.0)] {
        let dev = |g: f64| {
            let link = fso(1e-15, 1.1, 1, g);
            let exact = endtoend::outage(&rf, &link, &sys, 1e-10).unwrap().value;
            let asym = endtoend::outage_asymptotic(&rf, &link, &sys, 1e-10).unwrap();
            (asym - exact).abs() / exact
        };
        let devs: Vec<f64> = [40.0, 50.0, 60.0].into_iter().map(dev).collect();
        assert!(devs[2] < 0.05 && devs[2] < devs[0], "{devs:?}");
    }
}

#[test]
fn rejects_bad_inputs() {
    assert!(SystemConfig::new(0.0, 1.0).is_err());
    assert!(SystemConfig::new(1.0, -1.0).is_err());
    assert!(ModulationScheme::new("x", 0.0, 1.0).is_err());
    let sys = SystemConfig::default();
    let link = fso(1e-15, 1.1, 1, 10.0);
    assert!(endtoend::cdf(&etamu(0.5, 2), &link, &sys, -1.0, 1e-10).is_err());
    assert!(endtoend::outage(&kappamu(1.0, 1.5), &link, &sys, 1e-10).is_err());
}
