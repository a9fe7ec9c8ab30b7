//! How many Poisson terms the κ-μ outage series keeps for a given tolerance,
//! and the certified bound on what it drops.

use linkmix::channels::{Detection, FsoChannelParams, KappaMuParams, LinkGeometry};
use linkmix::endtoend::{cdf_kappamu_gg, SystemConfig};

fn main() -> linkmix::Result<()> {
    let geom = LinkGeometry { cn2: 1e-15, ..Default::default() };
    let sys = SystemConfig::default();
    for (kappa, mu) in [(1.0, 1.0), (3.0, 2.0)] {
        let rf = KappaMuParams::new(kappa, mu, 10.0)?;
        println!("kappa = {kappa}, mu = {mu}");
        for db in [0.0, 20.0, 40.0] {
            let fso = FsoChannelParams::from_geometry(&geom, 1.1, Detection::Heterodyne, 10f64.powf(db / 10.0))?;
            print!("  gbar2 = {db:>4} dB:");
            for tol in [1e-2, 1e-4, 1e-6, 1e-8] {
                let r = cdf_kappamu_gg(&rf, &fso, &sys, sys.gamma_th, tol)?;
                print!("  {tol:e}: {:>2} terms (bound {:.1e})", r.terms_used.unwrap_or(0), r.tail_bound);
            }
            println!();
        }
    }
    Ok(())
}
