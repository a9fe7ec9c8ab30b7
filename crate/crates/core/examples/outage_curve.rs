//! Outage probability of an η-μ / gamma-gamma relay link against the FSO
//! hop SNR, with its high-SNR asymptote.

use linkmix::channels::{Detection, EtaMuParams, FsoChannelParams, LinkGeometry, RfFading};
use linkmix::endtoend::{outage, outage_asymptotic, SystemConfig};

fn main() -> linkmix::Result<()> {
    let rf = RfFading::EtaMu(EtaMuParams::new(0.5, 2, 10.0)?);
    let geom = LinkGeometry { cn2: 1e-15, ..Default::default() };
    let sys = SystemConfig::default();

    println!("{:>8} {:>14} {:>10} {:>14}", "gbar2_dB", "outage", "err", "asymptote");
    for db in (0..=60).step_by(10) {
        let fso = FsoChannelParams::from_geometry(&geom, 1.1, Detection::Heterodyne, 10f64.powf(db as f64 / 10.0))?;
        let exact = outage(&rf, &fso, &sys, 1e-10)?;
        let asym = outage_asymptotic(&rf, &fso, &sys, 1e-10)?;
        println!("{db:>8} {:>14.6e} {:>10.1e} {asym:>14.6e}", exact.value, exact.abs_error_est);
    }
    Ok(())
}
