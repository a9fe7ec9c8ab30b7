//! Gamma-Gamma turbulence with zero-boresight pointing errors.

use crate::error::{domain, Result};
use crate::specfun::gamma::ln_gamma_pos;
use crate::specfun::meijer::{meijer_g_detailed, GEvalOptions, MeijerGSpec};

/// Default coefficient in the plane-wave Rytov variance `σ² = C Cn² k^{7/6} L^{11/6}`.
pub const DEFAULT_RYTOV_COEFF: f64 = 0.492;

/// Optical detection technique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detection {
    /// Heterodyne detection, `t = 1`.
    Heterodyne,
    /// Intensity modulation with direct detection, `t = 2`.
    ImDd,
}

impl Detection {
    pub fn t(self) -> u32 {
        match self {
            Detection::Heterodyne => 1,
            Detection::ImDd => 2,
        }
    }

    pub fn from_t(t: u32) -> Result<Self> {
        match t {
            1 => Ok(Detection::Heterodyne),
            2 => Ok(Detection::ImDd),
            _ => Err(domain(format!("detection type t must be 1 or 2, got {t}"))),
        }
    }
}

/// Turbulence quantities derived from the link geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Turbulence {
    /// Rytov variance `σ²`.
    pub rytov_variance: f64,
    /// Normalised aperture `d_ap = sqrt(k D² / (4L))`.
    pub d_ap: f64,
    pub a: f64,
    pub b: f64,
}

/// Physical link description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub cn2: f64,
    pub length_m: f64,
    pub aperture_m: f64,
    pub wavelength_m: f64,
    pub rytov_coeff: f64,
}

impl Default for LinkGeometry {
    fn default() -> Self {
        Self { cn2: 9e-15, length_m: 4000.0, aperture_m: 0.01, wavelength_m: 1550e-9, rytov_coeff: DEFAULT_RYTOV_COEFF }
    }
}

/// `a`, `b` for plane-wave propagation with aperture averaging.
pub fn derive_turbulence(geom: &LinkGeometry) -> Result<Turbulence> {
    let LinkGeometry { cn2, length_m, aperture_m, wavelength_m, rytov_coeff } = *geom;
    for (name, v) in [("Cn2", cn2), ("L", length_m), ("D", aperture_m), ("lambda", wavelength_m), ("rytov coeff", rytov_coeff)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(domain(format!("{name} must be positive and finite, got {v}")));
        }
    }
    let k = 2.0 * std::f64::consts::PI / wavelength_m;
    let s2 = rytov_coeff * cn2 * k.powf(7.0 / 6.0) * length_m.powf(11.0 / 6.0);
    let d2 = k * aperture_m * aperture_m / (4.0 * length_m);
    let s125 = s2.powf(1.2);
    let ea = 0.49 * s2 / (1.0 + 0.18 * d2 + 0.56 * s125).powf(7.0 / 6.0);
    let eb = 0.51 * s2 * (1.0 + 0.69 * s125).powf(-5.0 / 6.0) / (1.0 + 0.9 * d2 + 0.62 * d2 * s125).powf(5.0 / 6.0);
    let a = 1.0 / ea.exp_m1();
    let b = 1.0 / eb.exp_m1();
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(domain(format!("derived turbulence parameters are not finite (a = {a}, b = {b})")));
    }
    Ok(Turbulence { rytov_variance: s2, d_ap: d2.sqrt(), a, b })
}

/// `ξ²/(ξ²+1)`; 1 without pointing errors.
pub fn pointing_fraction(xi: f64) -> f64 {
    if xi.is_infinite() {
        1.0
    } else {
        let x2 = xi * xi;
        x2 / (x2 + 1.0)
    }
}

/// FSO hop: turbulence shape, pointing-error ratio `ξ` (infinite for none),
/// detection type and average electrical SNR `μ_t` (`γ̄₂`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsoChannelParams {
    a: f64,
    b: f64,
    xi: f64,
    detection: Detection,
    gamma_bar2: f64,
    turbulence: Option<Turbulence>,
}

impl FsoChannelParams {
    /// From explicit Gamma-Gamma shapes.
    pub fn new(a: f64, b: f64, xi: f64, detection: Detection, gamma_bar2: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(domain(format!("turbulence parameter {name} must be positive, got {v}")));
            }
        }
        if !(xi > 0.0) || xi.is_nan() {
            return Err(domain(format!("pointing ratio xi must be positive, got {xi}")));
        }
        if !(gamma_bar2 > 0.0) || !gamma_bar2.is_finite() {
            return Err(domain(format!("mean FSO SNR must be positive, got {gamma_bar2}")));
        }
        Ok(Self { a, b, xi, detection, gamma_bar2, turbulence: None })
    }

    /// From link geometry through [`derive_turbulence`].
    pub fn from_geometry(geom: &LinkGeometry, xi: f64, detection: Detection, gamma_bar2: f64) -> Result<Self> {
        let turb = derive_turbulence(geom)?;
        let mut p = Self::new(turb.a, turb.b, xi, detection, gamma_bar2)?;
        p.turbulence = Some(turb);
        Ok(p)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn xi(&self) -> f64 {
        self.xi
    }
    pub fn detection(&self) -> Detection {
        self.detection
    }
    pub fn t(&self) -> u32 {
        self.detection.t()
    }
    pub fn gamma_bar2(&self) -> f64 {
        self.gamma_bar2
    }
    pub fn turbulence(&self) -> Option<Turbulence> {
        self.turbulence
    }
    pub fn has_pointing_errors(&self) -> bool {
        self.xi.is_finite()
    }

    pub fn with_gamma_bar2(mut self, gamma_bar2: f64) -> Result<Self> {
        if !(gamma_bar2 > 0.0) || !gamma_bar2.is_finite() {
            return Err(domain(format!("mean FSO SNR must be positive, got {gamma_bar2}")));
        }
        self.gamma_bar2 = gamma_bar2;
        Ok(self)
    }

    /// Same link with pointing errors removed (`ξ → ∞`).
    pub fn without_pointing(mut self) -> Self {
        self.xi = f64::INFINITY;
        self
    }

    pub fn d(&self) -> f64 {
        pointing_fraction(self.xi)
    }

    /// `κ_t`: `γ̄₂` for heterodyne detection, `γ̄₂ ab ξ²(ξ²+2)/((a+1)(b+1)(ξ²+1)²)` for IM/DD.
    pub fn kappa_t(&self) -> f64 {
        match self.detection {
            Detection::Heterodyne => self.gamma_bar2,
            Detection::ImDd => {
                let (a, b) = (self.a, self.b);
                let base = self.gamma_bar2 * a * b / ((a + 1.0) * (b + 1.0));
                if self.xi.is_infinite() {
                    base
                } else {
                    let x2 = self.xi * self.xi;
                    base * x2 * (x2 + 2.0) / ((x2 + 1.0) * (x2 + 1.0))
                }
            }
        }
    }

    /// `ln` of `ξ² / (t Γ(a) Γ(b))`, the density prefactor.
    fn ln_pdf_prefactor(&self) -> f64 {
        let head = if self.xi.is_finite() { 2.0 * self.xi.ln() } else { 0.0 };
        head - (self.t() as f64).ln() - ln_gamma_pos(self.a) - ln_gamma_pos(self.b)
    }
}

/// Density of the FSO electrical SNR.
///
/// With pointing errors `ξ²/(tΓaΓbγ) G^{3,0}_{1,3}(dab(γ/κ_t)^{1/t} | ξ²+1; ξ², a, b)`;
/// without, `1/(tΓaΓbγ) G^{2,0}_{0,2}(ab(γ/κ_t)^{1/t} | -; a, b)`.
pub fn gg_pdf(fso: &FsoChannelParams, gamma2: f64) -> Result<f64> {
    gg_pdf_with(fso, gamma2, &GEvalOptions::default())
}

pub fn gg_pdf_with(fso: &FsoChannelParams, gamma2: f64, opts: &GEvalOptions) -> Result<f64> {
    if gamma2 <= 0.0 {
        return Ok(0.0);
    }
    let (a, b) = (fso.a, fso.b);
    let z = fso.d() * a * b * (gamma2 / fso.kappa_t()).powf(1.0 / fso.t() as f64);
    let spec = if fso.has_pointing_errors() {
        let x2 = fso.xi * fso.xi;
        MeijerGSpec::new(3, 0, vec![x2 + 1.0], vec![x2, a, b])?
    } else {
        MeijerGSpec::new(2, 0, vec![], vec![a, b])?
    };
    let g = meijer_g_detailed(&spec, z, opts)?;
    Ok(g.scaled_by(fso.ln_pdf_prefactor() - gamma2.ln()).0)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::quad::{integrate, Tolerance};

    fn close(x: f64, y: f64, rel: f64) -> bool {
        (x - y).abs() <= rel * y.abs()
    }

    #[test]
    fn turbulence_reference_values() {
        let cases = [
            (1e-15, 0.10113417873115532, 20.636939001356004, 20.000358856006955),
            (9e-15, 0.9102076085803979, 3.1347604876190362, 2.8376229978567619),
            (3e-14, 3.0340253619346597, 2.0751651763880712, 1.5549626064993844),
        ];
        for (cn2, s2, a, b) in cases {
            let t = derive_turbulence(&LinkGeometry { cn2, ..Default::default() }).unwrap();
            assert!(close(t.rytov_variance, s2, 1e-12), "{cn2}");
            assert!(close(t.d_ap, 0.15917105461020273, 1e-12));
            assert!(close(t.a, a, 1e-12), "{cn2}: {} vs {a}", t.a);
            assert!(close(t.b, b, 1e-12), "{cn2}: {} vs {b}", t.b);
        }
    }

    #[test]
    fn invalid_geometry() {
        assert!(derive_turbulence(&LinkGeometry { cn2: 0.0, ..Default::default() }).is_err());
        assert!(derive_turbulence(&LinkGeometry { length_m: -1.0, ..Default::default() }).is_err());
        assert!(FsoChannelParams::new(1.0, 1.0, 1.1, Detection::Heterodyne, 0.0).is_err());
        assert!(Detection::from_t(3).is_err());
    }

    #[test]
    fn density_normalises() {
        for det in [Detection::Heterodyne, Detection::ImDd] {
            for xi in [1.1, 6.7, f64::INFINITY] {
                let p = FsoChannelParams::new(3.1347604876190362, 2.8376229978567619, xi, det, 10.0).unwrap();
                let r = integrate(
                    |u| {
                        let g = u.exp();
                        gg_pdf(&p, g).unwrap() * g
                    },
                    -40.0,
                    12.0,
                    Tolerance::new(1e-11, 1e-9),
                );
                assert!((r.value - 1.0).abs() < 1e-7, "{det:?} xi={xi}: {}", r.value);
            }
        }
    }

    #[test]
    fn heterodyne_mean_is_gamma_bar() {
        let p = FsoChannelParams::new(2.0751651763880712, 1.5549626064993844, 1.1, Detection::Heterodyne, 7.0).unwrap();
        let r = integrate(
            |u| {
                let g = u.exp();
                gg_pdf(&p, g).unwrap() * g * g
            },
            -40.0,
            14.0,
            Tolerance::new(1e-10, 1e-9),
        );
        assert!(close(r.value, 7.0, 1e-6), "{}", r.value);
    }
}
