//! `∫₀^∞ x^{−α−1} e^{−σ/x} G(ω x^{u/v}) dx` in closed form and by direct
//! quadrature on a log grid.

use linkmix::endtoend::mellin_exp_g_integral;
use linkmix::quad::{integrate, Tolerance};
use linkmix::specfun::{meijer_g, GEvalOptions, MeijerGSpec};

fn main() -> linkmix::Result<()> {
    let spec = MeijerGSpec::new(2, 0, vec![], vec![0.3, 1.1])?;
    let (alpha, sigma, omega) = (0.4, 0.9, 2.0);
    let opts = GEvalOptions::default();
    for (u, v) in [(1, 1), (1, 2), (2, 1)] {
        let closed = mellin_exp_g_integral(alpha, sigma, omega, u, v, &spec)?;
        let ratio = u as f64 / v as f64;
        let direct = integrate(
            |w: f64| {
                let x = w.exp();
                let g = meijer_g(&spec, omega * x.powf(ratio), &opts).unwrap_or(f64::NAN);
                (-alpha * w - sigma / x).exp() * g
            },
            -12.0,
            12.0,
            Tolerance::new(1e-14, 1e-10),
        );
        println!(
            "u/v = {u}/{v}: closed {closed:.12e}  quadrature {:.12e}  rel diff {:.1e}",
            direct.value,
            (closed - direct.value).abs() / direct.value.abs()
        );
    }
    Ok(())
}
