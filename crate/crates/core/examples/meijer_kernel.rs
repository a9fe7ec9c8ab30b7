//! Evaluates a few Meijer G-functions with known elementary forms and shows
//! the contour and residue-series engines side by side.

use linkmix::specfun::{meijer_g_detailed, GEvalOptions, GMethod, MeijerGSpec};

type Case = (&'static str, MeijerGSpec, fn(f64) -> f64);

fn main() -> linkmix::Result<()> {
    let cases: [Case; 3] = [
        ("G^{1,0}_{0,1}(z|-;0) = e^-z", MeijerGSpec::new(1, 0, vec![], vec![0.0])?, |z| (-z).exp()),
        ("G^{1,1}_{1,1}(z|0;0) = 1/(1+z)", MeijerGSpec::new(1, 1, vec![0.0], vec![0.0])?, |z| 1.0 / (1.0 + z)),
        (
            "G^{2,0}_{0,2}(z|-;1/4,-1/4) = sqrt(pi) z^-1/4 e^-2sqrt(z)",
            MeijerGSpec::new(2, 0, vec![], vec![0.25, -0.25])?,
            |z| std::f64::consts::PI.sqrt() * z.powf(-0.25) * (-2.0 * z.sqrt()).exp(),
        ),
    ];
    for (name, spec, exact) in cases {
        println!("{name}");
        for z in [0.01, 1.0, 30.0] {
            let contour = meijer_g_detailed(&spec, z, &GEvalOptions::default())?;
            let e = exact(z);
            // The series refuses large z once cancellation eats the digits.
            let series = match meijer_g_detailed(&spec, z, &GEvalOptions::default().with_method(GMethod::ResidueSeries)) {
                Ok(s) => format!("{:.1e}", (s.value - e).abs() / e),
                Err(_) => "declined".into(),
            };
            println!(
                "  z = {z:>5}: exact {e:.15e}  contour rel {:.1e} (est {:.1e})  series rel {series}",
                (contour.value - e).abs() / e,
                contour.abs_err / e,
            );
        }
    }
    Ok(())
}
