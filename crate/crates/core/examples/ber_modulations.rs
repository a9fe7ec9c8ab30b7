//! Average bit error rate of the four built-in binary modulations, with and
//! without pointing errors.

use linkmix::channels::{Detection, FsoChannelParams, KappaMuParams, LinkGeometry, RfFading};
use linkmix::endtoend::{ber, ModulationScheme, SystemConfig};

fn main() -> linkmix::Result<()> {
    let rf = RfFading::KappaMu(KappaMuParams::new(2.0, 2.0, 100.0)?);
    let geom = LinkGeometry { cn2: 9e-15, ..Default::default() };
    let sys = SystemConfig::default();
    let with_pe = FsoChannelParams::from_geometry(&geom, 1.1, Detection::Heterodyne, 100.0)?;
    let without = with_pe.without_pointing();

    println!("{:<6} {:>14} {:>14}", "scheme", "xi = 1.1", "no pointing");
    for m in ModulationScheme::table() {
        let a = ber(&rf, &with_pe, &sys, &m, 1e-10)?;
        let b = ber(&rf, &without, &sys, &m, 1e-10)?;
        println!("{:<6} {:>14.6e} {:>14.6e}", m.name, a.value, b.value);
    }
    Ok(())
}
