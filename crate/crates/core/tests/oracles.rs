use linkmix::channels::{Detection, EtaMuParams, FsoChannelParams, KappaMuParams, LinkGeometry, RfFading};
use linkmix::endtoend::{self, ModulationScheme, SystemConfig};
use linkmix::oracles::{mc_ber, mc_outage, quad_ber, quad_ber_relay, quad_cdf, McConfig};

fn setup() -> (RfFading, FsoChannelParams, SystemConfig) {
    let rf = RfFading::EtaMu(EtaMuParams::new(0.5, 3, 10.0).unwrap());
    let geom = LinkGeometry { cn2: 9e-15, ..Default::default() };
    let fso = FsoChannelParams::from_geometry(&geom, 1.1, Detection::Heterodyne, 10.0).unwrap();
    (rf, fso, SystemConfig::default())
}

#[test]
fn monte_carlo_is_independent_of_stream_count() {
    let (rf, fso, sys) = setup();
    let base = McConfig { seed: 9, n_samples: 50_000, n_streams: 1 };
    let a = mc_outage(&rf, &fso, &sys, &base).unwrap();
    for n_streams in [2, 3, 8] {
        let b = mc_outage(&rf, &fso, &sys, &McConfig { n_streams, ..base }).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
    }
    let m = ModulationScheme::cbfsk();
    let x = mc_ber(&rf, &fso, &sys, &m, &base).unwrap();
    let y = mc_ber(&rf, &fso, &sys, &m, &McConfig { n_streams: 4, ..base }).unwrap();
    assert_eq!(x.value.to_bits(), y.value.to_bits());
}

#[test]
fn seeds_give_different_streams() {
    let (rf, fso, sys) = setup();
    let a = mc_outage(&rf, &fso, &sys, &McConfig::new(1, 20_000)).unwrap();
    let b = mc_outage(&rf, &fso, &sys, &McConfig::new(2, 20_000)).unwrap();
    assert_ne!(a.value, b.value);
    assert_eq!(a.n, 20_000);
}

#[test]
fn monte_carlo_brackets_the_closed_form() {
    let (rf, fso, sys) = setup();
    let cf = endtoend::outage(&rf, &fso, &sys, 1e-10).unwrap().value;
    let mc = mc_outage(&rf, &fso, &sys, &McConfig::new(42, 400_000)).unwrap();
    assert!((cf - mc.value).abs() < 3.0 * mc.std_error, "{cf} vs {mc:?}");
    let m = ModulationScheme::dbpsk();
    let cf = endtoend::ber(&rf, &fso, &sys, &m, 1e-10).unwrap().value;
    let mc = mc_ber(&rf, &fso, &sys, &m, &McConfig::new(42, 400_000)).unwrap();
    assert!((cf - mc.value).abs() < 3.0 * mc.std_error, "{cf} vs {mc:?}");
}

#[test]
fn quadrature_matches_closed_forms() {
    let (rf, fso, sys) = setup();
    for g in [0.3, 1.0, 4.0] {
        let cf = endtoend::cdf(&rf, &fso, &sys, g, 1e-10).unwrap().value;
        let q = quad_cdf(|x| rf.cdf(x), &fso, &sys, g).unwrap();
        assert!((cf - q.value).abs() < 1e-9, "{cf} vs {}", q.value);
    }
    let m = ModulationScheme::nbfsk();
    let cf = endtoend::ber(&rf, &fso, &sys, &m, 1e-10).unwrap().value;
    let q = quad_ber_relay(|x| rf.cdf(x), &fso, &sys, &m).unwrap();
    assert!((cf - q.value).abs() < 1e-9, "{cf} vs {}", q.value);
}

#[test]
fn quad_ber_of_exponential_snr() {
    // γ ~ Exp(mean 5): DBPSK gives 1/(2(1 + 5))
    let m = ModulationScheme::dbpsk();
    let q = quad_ber(|g| 1.0 - (-g / 5.0).exp(), &m).unwrap();
    assert!((q.value - 1.0 / 12.0).abs() < 1e-10);
}

#[test]
fn kappamu_relay_quadrature() {
    let rf = RfFading::KappaMu(KappaMuParams::new(1.5, 1.0, 10.0).unwrap());
    let geom = LinkGeometry { cn2: 3e-14, ..Default::default() };
    let fso = FsoChannelParams::from_geometry(&geom, 1.1, Detection::ImDd, 100.0).unwrap();
    let sys = SystemConfig::new(1.0, 2.0).unwrap();
    let cf = endtoend::outage(&rf, &fso, &sys, 1e-11).unwrap().value;
    let q = quad_cdf(|x| rf.cdf(x), &fso, &sys, sys.gamma_th).unwrap();
    assert!((cf - q.value).abs() < 1e-9);
}

#[test]
fn rejects_tiny_runs() {
    let (rf, fso, sys) = setup();
    assert!(mc_outage(&rf, &fso, &sys, &McConfig::new(1, 10)).is_err());
    assert!(mc_outage(&rf, &fso, &sys, &McConfig { n_streams: 0, ..McConfig::default() }).is_err());
}
