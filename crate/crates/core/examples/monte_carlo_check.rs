//! Cross-checks one closed-form outage value against adaptive quadrature
//! and a seeded Monte-Carlo run.

use linkmix::channels::{Detection, EtaMuParams, FsoChannelParams, LinkGeometry, RfFading};
use linkmix::endtoend::{outage, SystemConfig};
use linkmix::oracles::{mc_outage, quad_cdf, McConfig};

fn main() -> linkmix::Result<()> {
    let rf = RfFading::EtaMu(EtaMuParams::new(0.5, 3, 10.0)?);
    let geom = LinkGeometry { cn2: 3e-14, ..Default::default() };
    let fso = FsoChannelParams::from_geometry(&geom, 1.1, Detection::ImDd, 100.0)?;
    let sys = SystemConfig::default();

    let closed = outage(&rf, &fso, &sys, 1e-10)?;
    let quad = quad_cdf(|g| rf.cdf(g), &fso, &sys, sys.gamma_th)?;
    let mc = mc_outage(&rf, &fso, &sys, &McConfig::new(7, 1_000_000))?;

    println!("closed form  {:.12e}  (error bound {:.1e})", closed.value, closed.abs_error_est);
    println!("quadrature   {:.12e}  (error est {:.1e})", quad.value, quad.std_error);
    println!("monte carlo  {:.12e}  (SE {:.1e}, {} samples)", mc.value, mc.std_error, mc.n);
    println!("closed - mc = {:+.2} SE", (closed.value - mc.value) / mc.std_error);
    Ok(())
}
