//! Built-in figure configurations.
//!
//! Shared defaults: heterodyne detection, γ_th = 0 dB, L = 4000 m,
//! D = 0.01 m, λ = 1550 nm, c = 1, 10⁶ Monte-Carlo samples.

use super::config::{
    db_to_linear, OracleToggles, Output, RfSpec, Scenario, Series, Sweep, SweepAxis, SweepConfig,
};
use crate::channels::LinkGeometry;
use crate::endtoend::ModulationScheme;

pub const PRESET_NAMES: [&str; 4] = ["fig2", "fig3", "fig4", "fig5"];

/// Second pointing-error value for fig5 (large ξ, weak pointing errors).
pub const FIG5_XI_LARGE: f64 = 10.0;

/// Kernel tolerance for fig5: its error rates reach 1e-11, below the
/// cancellation error left by the default tolerance.
pub const FIG5_KERNEL_REL_TOL: f64 = 1e-13;

fn base() -> Scenario {
    Scenario {
        gamma_bar1: db_to_linear(10.0),
        gamma_bar2: db_to_linear(10.0),
        geometry: LinkGeometry { cn2: 1e-15, ..Default::default() },
        xi: 1.1,
        ..Default::default()
    }
}

fn config(name: &str, series: Vec<Series>, sweep: Sweep, outputs: Vec<Output>) -> SweepConfig {
    SweepConfig { name: name.into(), series, sweep: Some(sweep), outputs, oracles: OracleToggles::default(), tol: 1e-10 }
}

/// Outage vs γ̄₂ for η-μ RF fading.
pub fn fig2() -> SweepConfig {
    let series = [(0.5, 1), (0.9, 1), (0.5, 2), (0.9, 2)]
        .into_iter()
        .map(|(eta, mu)| Series {
            label: format!("eta={eta};mu={mu}"),
            scenario: Scenario { rf: RfSpec::EtaMu { eta, mu }, ..base() },
        })
        .collect();
    let sweep = Sweep { axis: SweepAxis::GammaBar2Db, start: 0.0, stop: 50.0, step: 5.0 };
    config("fig2", series, sweep, vec![Output::Outage, Output::OutageAsym])
}

/// Outage vs γ̄₂ for κ-μ RF fading.
pub fn fig3() -> SweepConfig {
    let series = [(1.0, 1.0), (3.0, 1.0), (1.0, 2.0), (3.0, 2.0)]
        .into_iter()
        .map(|(kappa, mu)| Series {
            label: format!("kappa={kappa};mu={mu}"),
            scenario: Scenario { rf: RfSpec::KappaMu { kappa, mu }, ..base() },
        })
        .collect();
    let sweep = Sweep { axis: SweepAxis::GammaBar2Db, start: 0.0, stop: 50.0, step: 5.0 };
    config("fig3", series, sweep, vec![Output::Outage, Output::OutageAsym])
}

/// Outage vs γ̄₁ for three turbulence strengths.
pub fn fig4() -> SweepConfig {
    let series = [1e-15, 9e-15, 3e-14]
        .into_iter()
        .map(|cn2| {
            let mut s = Scenario { rf: RfSpec::EtaMu { eta: 0.5, mu: 3 }, ..base() };
            s.geometry.cn2 = cn2;
            Series { label: format!("cn2={cn2:e}"), scenario: s }
        })
        .collect();
    let sweep = Sweep { axis: SweepAxis::GammaBar1Db, start: 0.0, stop: 40.0, step: 5.0 };
    config("fig4", series, sweep, vec![Output::Outage])
}

/// CBFSK and NBFSK error rate vs γ̄₁ for strong and weak pointing errors.
pub fn fig5() -> SweepConfig {
    let series = [1.1, FIG5_XI_LARGE]
        .into_iter()
        .map(|xi| {
            let mut s = Scenario { rf: RfSpec::EtaMu { eta: 0.5, mu: 3 }, xi, ..base() };
            s.geometry.cn2 = 9e-15;
            s.system.kernel.rel_tol = FIG5_KERNEL_REL_TOL;
            Series { label: format!("xi={xi}"), scenario: s }
        })
        .collect();
    let sweep = Sweep { axis: SweepAxis::GammaBar1Db, start: 0.0, stop: 40.0, step: 5.0 };
    config(
        "fig5",
        series,
        sweep,
        vec![Output::Ber(ModulationScheme::cbfsk()), Output::Ber(ModulationScheme::nbfsk())],
    )
}

pub fn preset(name: &str) -> Option<SweepConfig> {
    match name {
        "fig2" => Some(fig2()),
        "fig3" => Some(fig3()),
        "fig4" => Some(fig4()),
        "fig5" => Some(fig5()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate_and_round_trip() {
        for name in PRESET_NAMES {
            let cfg = preset(name).unwrap();
            cfg.validate().unwrap();
            let back = SweepConfig::from_ini_str(&cfg.to_ini_string()).unwrap();
            assert_eq!(cfg, back, "{name}");
        }
        assert!(preset("fig9").is_none());
    }

    #[test]
    fn shared_defaults() {
        for name in PRESET_NAMES {
            for s in preset(name).unwrap().series {
                let sc = s.scenario;
                assert_eq!(sc.system.gamma_th, 1.0);
                assert_eq!(sc.system.c, 1.0);
                assert_eq!(sc.geometry.length_m, 4000.0);
                assert_eq!(sc.geometry.aperture_m, 0.01);
                assert_eq!(sc.geometry.wavelength_m, 1550e-9);
                assert_eq!(sc.detection.t(), 1);
            }
        }
    }
}
