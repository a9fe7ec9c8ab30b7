//! Expectations of Erlang terms over the FSO hop.
//!
//! For one RF mixture term of rate `A` and order `l`, the end-to-end CDF needs
//! `E_l(γ) = E[e^{−Aγ(1+c/γ₂)} (Aγ(1+c/γ₂))^l / l!]`, which expands into
//! `e^{−Aγ} Σ_{j≤l} (Aγ)^{l−j}/(j!(l−j)!) C_t G_j(βAγ)` with
//! `G_j = G^{M,0}_{t,M}(· | ω; τ(j))`. The density and BER variants follow by
//! differentiation and by a Laplace-type integral of the same terms.

use crate::channels::FsoChannelParams;
use crate::endtoend::SystemConfig;
use crate::error::Result;
use crate::specfun::gamma::{ln_factorial, ln_gamma_pos};
use crate::specfun::meijer::{
    meijer_g_detailed, meijer_g_leading_residues, GDiagnostics, GEvalOptions, GValue, MeijerGSpec,
};

/// Running sum of G-weighted terms with error and diagnostics.
#[derive(Debug, Clone, Default)]
pub(crate) struct Acc {
    pub value: f64,
    pub err: f64,
    pub diags: Vec<GDiagnostics>,
}

impl Acc {
    fn add_g(&mut self, g: &GValue, ln_coef: f64, sign: f64) {
        let (v, e) = g.scaled_by(ln_coef);
        self.value += sign * v;
        self.err += e;
    }

    pub fn add(&mut self, other: &Acc, scale: f64) {
        self.value += scale * other.value;
        self.err += scale.abs() * other.err;
    }
}

/// Parameter lists and constants shared by every closed form for one FSO hop.
pub(crate) struct Kernel {
    omega: Vec<f64>,
    tau_fixed: Vec<f64>,
    ln_ct: f64,
    beta: f64,
    opts: GEvalOptions,
}

/// `{x/t, (x+1)/t, …, (x+t−1)/t}`
pub(crate) fn delta(t: u32, x: f64) -> impl Iterator<Item = f64> {
    (0..t).map(move |k| (x + k as f64) / t as f64)
}

impl Kernel {
    pub fn new(fso: &FsoChannelParams, sys: &SystemConfig, opts: &GEvalOptions) -> Self {
        let t = fso.t();
        let tf = t as f64;
        let (a, b) = (fso.a(), fso.b());
        let ln_2pi = (2.0 * std::f64::consts::PI).ln();
        let base = -(tf - 1.0) * ln_2pi - ln_gamma_pos(a) - ln_gamma_pos(b);
        let (omega, mut tau_fixed, ln_ct) = if fso.has_pointing_errors() {
            let x2 = fso.xi() * fso.xi();
            let omega: Vec<f64> = delta(t, x2 + 1.0).collect();
            let tau: Vec<f64> = delta(t, x2).collect();
            (omega, tau, x2.ln() + (a + b - 2.0) * tf.ln() + base)
        } else {
            (Vec::new(), Vec::new(), (a + b - 1.0) * tf.ln() + base)
        };
        tau_fixed.extend(delta(t, a));
        tau_fixed.extend(delta(t, b));
        let beta = (fso.d() * a * b).powi(t as i32) * sys.c / (fso.kappa_t() * tf.powi(2 * t as i32));
        Self { omega, tau_fixed, ln_ct, beta, opts: *opts }
    }

    /// Number of G parameters in the lower m-group.
    pub fn order_m(&self) -> usize {
        self.tau_fixed.len() + 1
    }

    pub fn tau(&self, j: u32) -> Vec<f64> {
        let mut v = self.tau_fixed.clone();
        v.push(j as f64);
        v
    }

    pub fn ln_ct(&self) -> f64 {
        self.ln_ct
    }

    /// Argument scale: `G_j` is evaluated at `β A γ`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn cdf_spec(&self, j: u32) -> Result<MeijerGSpec> {
        MeijerGSpec::new(self.order_m(), 0, self.omega.clone(), self.tau(j))
    }

    /// `z d/dz G_j`: `G^{M,1}_{t+1,M+1}(· | 0, ω; τ(j), 1)`.
    pub fn pdf_spec(&self, j: u32) -> Result<MeijerGSpec> {
        let mut a = vec![0.0];
        a.extend_from_slice(&self.omega);
        let mut b = self.tau(j);
        b.push(1.0);
        MeijerGSpec::new(self.order_m(), 1, a, b)
    }

    /// `G^{M,1}_{t+1,M}(· | 1+j−p−l, ω; τ(j))`.
    pub fn ber_spec(&self, j: u32, l: u32, p: f64) -> Result<MeijerGSpec> {
        let mut a = vec![1.0 + j as f64 - p - l as f64];
        a.extend_from_slice(&self.omega);
        MeijerGSpec::new(self.order_m(), 1, a, self.tau(j))
    }

    fn g(&self, spec: &MeijerGSpec, z: f64) -> Result<GValue> {
        meijer_g_detailed(spec, z, &self.opts)
    }
}

/// Lazily evaluated `G_j` (and `z G_j'`) for one rate and one `γ`.
pub(crate) struct RateCache<'k> {
    kernel: &'k Kernel,
    rate: f64,
    gamma: f64,
    g: Vec<GValue>,
    gp: Vec<GValue>,
    pub diags: Vec<GDiagnostics>,
}

impl<'k> RateCache<'k> {
    pub fn new(kernel: &'k Kernel, rate: f64, gamma: f64) -> Self {
        Self { kernel, rate, gamma, g: Vec::new(), gp: Vec::new(), diags: Vec::new() }
    }

    fn z(&self) -> f64 {
        self.kernel.beta * self.rate * self.gamma
    }

    fn g_j(&mut self, j: u32) -> Result<&GValue> {
        while self.g.len() <= j as usize {
            let spec = self.kernel.cdf_spec(self.g.len() as u32)?;
            let v = self.kernel.g(&spec, self.z())?;
            self.diags.push(v.diagnostics.clone());
            self.g.push(v);
        }
        Ok(&self.g[j as usize])
    }

    fn gp_j(&mut self, j: u32) -> Result<&GValue> {
        while self.gp.len() <= j as usize {
            let spec = self.kernel.pdf_spec(self.gp.len() as u32)?;
            let v = self.kernel.g(&spec, self.z())?;
            self.diags.push(v.diagnostics.clone());
            self.gp.push(v);
        }
        Ok(&self.gp[j as usize])
    }

    fn ln_coef(&self, l: u32, j: u32) -> f64 {
        let x = self.rate * self.gamma;
        self.kernel.ln_ct + (l - j) as f64 * x.ln() - x - ln_factorial(j) - ln_factorial(l - j)
    }

    /// `E_l(γ)`.
    pub fn cdf_order(&mut self, l: u32) -> Result<Acc> {
        let mut acc = Acc::default();
        for j in 0..=l {
            let c = self.ln_coef(l, j);
            let g = self.g_j(j)?.clone();
            acc.add_g(&g, c, 1.0);
        }
        Ok(acc)
    }

    /// `d/dγ E_l(γ)`.
    pub fn pdf_order(&mut self, l: u32) -> Result<Acc> {
        let mut acc = Acc::default();
        let inv_g = 1.0 / self.gamma;
        for j in 0..=l {
            let c = self.ln_coef(l, j);
            let w = (l - j) as f64 * inv_g - self.rate;
            let g = self.g_j(j)?.clone();
            let (v, e) = g.scaled_by(c);
            acc.value += w * v;
            acc.err += w.abs() * e;
            let gp = self.gp_j(j)?.clone();
            acc.add_g(&gp, c - self.gamma.ln(), 1.0);
        }
        Ok(acc)
    }

    /// `E_l` with each `G_j` replaced by its leading residues.
    pub fn asymptotic_order(&self, l: u32) -> Result<f64> {
        let z = self.z();
        let mut sum = 0.0;
        for j in 0..=l {
            let spec = self.kernel.cdf_spec(j)?;
            let g = meijer_g_leading_residues(&spec, z, self.kernel.opts.pole_separation_min)?;
            sum += self.ln_coef(l, j).exp() * g;
        }
        Ok(sum)
    }
}

/// `q^p/(2Γ(p)) ∫ e^{−qγ} γ^{p−1} E_l(γ) dγ` for rate `A`.
pub(crate) fn ber_order(kernel: &Kernel, rate: f64, l: u32, p: f64, q: f64) -> Result<Acc> {
    let mut acc = Acc::default();
    let s = q + rate;
    let z = kernel.beta * rate / s;
    let head = p * q.ln() - (2.0f64).ln() - ln_gamma_pos(p) + kernel.ln_ct;
    for j in 0..=l {
        let c = head + (l - j) as f64 * rate.ln() - ln_factorial(j) - ln_factorial(l - j)
            + (j as f64 - p - l as f64) * s.ln();
        let spec = kernel.ber_spec(j, l, p)?;
        let g = kernel.g(&spec, z)?;
        acc.add_g(&g, c, 1.0);
        acc.diags.push(g.diagnostics.clone());
    }
    Ok(acc)
}
