//! Meijer G-function of a positive real argument.
//!
//! ```text
//!                 1   ⌠  ∏_{j≤m} Γ(b_j − s) ∏_{k≤n} Γ(1 − a_k + s)
//! G^{m,n}_{p,q} = ─── │ ───────────────────────────────────────────── z^s ds
//!                2πi  ⌡L ∏_{j>m} Γ(1 − b_j + s) ∏_{k>n} Γ(a_k − s)
//! ```
//!
//! The default evaluator integrates along a vertical line `Re s = c` inside
//! the strip that separates the two pole families. Inside that strip `c` is
//! placed at the minimum of the real-axis integrand envelope (a saddle
//! point), which keeps the integrand free of cancellation for both tiny and
//! huge `z`. When the strip is empty or narrower than `1e-3` the line is
//! moved and the crossed poles are added back as explicit residues.
//!
//! The residue (Slater) series sums the residues of the `Γ(b_j − s)` family
//! and is exact whenever those poles are simple; it is used as a cross-check
//! and as the engine behind small-argument expansions.

use std::f64::consts::PI;

use log::debug;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_breaks, Tolerance};
use crate::specfun::gamma::{
    ln_factorial, ln_gamma_pos, ln_gamma_signed_unchecked, ln_gamma_unchecked,
    ln_recip_gamma_envelope,
};

const MIN_STRIP: f64 = 1e-3;
const MAX_PANELS: usize = 4_000;

/// Orders and parameters of one `G^{m,n}_{p,q}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    m: usize,
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl MeijerGSpec {
    /// `a` holds the `p` upper parameters (first `n` belong to the
    /// `Γ(1 − a + s)` family), `b` the `q` lower ones (first `m` belong to
    /// the `Γ(b − s)` family).
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if m > b.len() || n > a.len() {
            return Err(Error::InvalidSpec(format!(
                "orders m={m}, n={n} exceed p={}, q={}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec("non-finite parameter".into()));
        }
        // a_k - b_j - 1 must not be a non-negative integer
        for &ak in &a[..n] {
            for &bj in &b[..m] {
                let d = ak - bj - 1.0;
                if d > -1e-12 && (d - d.round()).abs() < 1e-12 {
                    return Err(Error::InvalidSpec(format!(
                        "pole of Γ({bj} - s) coincides with pole of Γ(1 - {ak} + s)"
                    )));
                }
            }
        }
        Ok(Self { m, n, a, b })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.a.len()
    }
    pub fn q(&self) -> usize {
        self.b.len()
    }
    pub fn a(&self) -> &[f64] {
        &self.a
    }
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `c* = m + n − (p + q)/2`; the contour integrand decays like
    /// `exp(−π c* |Im s|)`.
    pub fn decay_rate(&self) -> f64 {
        (self.m + self.n) as f64 - 0.5 * (self.p() + self.q()) as f64
    }

    fn strip(&self) -> (f64, f64) {
        let hi = self.b[..self.m].iter().copied().fold(f64::INFINITY, f64::min);
        let lo = self.a[..self.n].iter().map(|a| a - 1.0).fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    /// `ln` of the Mellin–Barnes integrand (without `z^s`).
    fn ln_phi(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &bj in &self.b[..self.m] {
            acc += ln_gamma_unchecked(bj - s);
        }
        for &ak in &self.a[..self.n] {
            acc += ln_gamma_unchecked(1.0 - ak + s);
        }
        for &bj in &self.b[self.m..] {
            acc -= ln_gamma_unchecked(1.0 - bj + s);
        }
        for &ak in &self.a[self.n..] {
            acc -= ln_gamma_unchecked(ak - s);
        }
        acc
    }

    /// Smooth upper envelope of `ln |Φ(c)|` on the real axis.
    fn ln_phi_envelope(&self, c: f64) -> f64 {
        let mut acc = 0.0;
        for &bj in &self.b[..self.m] {
            acc += ln_gamma_pos(bj - c);
        }
        for &ak in &self.a[..self.n] {
            acc += ln_gamma_pos(1.0 - ak + c);
        }
        for &bj in &self.b[self.m..] {
            acc += ln_recip_gamma_envelope(1.0 - bj + c);
        }
        for &ak in &self.a[self.n..] {
            acc += ln_recip_gamma_envelope(ak - c);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GMethod {
    #[default]
    Contour,
    ResidueSeries,
    Auto,
    /// Residue series when its rounding and truncation estimate already meets
    /// `rel_tol`, contour otherwise.
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GEvalOptions {
    pub rel_tol: f64,
    pub max_quadrature_nodes: usize,
    pub pole_separation_min: f64,
    pub method: GMethod,
}

impl Default for GEvalOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            max_quadrature_nodes: 400_000,
            pole_separation_min: 1e-6,
            method: GMethod::Contour,
        }
    }
}

impl GEvalOptions {
    pub fn with_method(mut self, method: GMethod) -> Self {
        self.method = method;
        self
    }
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.pole_separation_min > 0.0) {
            return Err(Error::Domain("G options need rel_tol > 0 and pole_separation_min > 0".into()));
        }
        Ok(())
    }
}

/// Outcome of a residue-series cross-check run in `Auto` mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheck {
    pub value: f64,
    pub rel_diff: f64,
    /// Size of the parameter nudge applied to separate colliding poles.
    pub nudge: Option<f64>,
}

/// Diagnostic record of one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct GDiagnostics {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub z: f64,
    pub method: GMethod,
    pub abscissa: Option<f64>,
    pub nodes: usize,
    pub tail_estimate: f64,
    pub crossed_residues: usize,
    pub series_terms: usize,
    pub crosscheck: Option<CrossCheck>,
}

/// Value with its absolute error estimate. `value = scaled * exp(log_scale)`;
/// the split lets callers combine very large or very small G values with
/// gamma-function prefactors in log space.
#[derive(Debug, Clone, PartialEq)]
pub struct GValue {
    pub value: f64,
    pub abs_err: f64,
    pub scaled: f64,
    pub log_scale: f64,
    pub diagnostics: GDiagnostics,
}

impl GValue {
    /// `prefactor_ln`-scaled value: `exp(prefactor_ln) * G`, computed without
    /// forming G itself. Returns `(value, abs_err)`.
    pub fn scaled_by(&self, prefactor_ln: f64) -> (f64, f64) {
        let s = (self.log_scale + prefactor_ln).exp();
        let rel_err = if self.value != 0.0 && self.value.is_finite() {
            self.abs_err / self.value.abs()
        } else {
            0.0
        };
        let v = self.scaled * s;
        let e = if self.value.is_finite() && self.value != 0.0 {
            rel_err * v.abs()
        } else {
            self.abs_err * prefactor_ln.exp()
        };
        (v, e)
    }
}

/// `G^{m,n}_{p,q}(z)` for `z > 0`.
pub fn meijer_g(spec: &MeijerGSpec, z: f64, opts: &GEvalOptions) -> Result<f64> {
    Ok(meijer_g_detailed(spec, z, opts)?.value)
}

/// As [`meijer_g`], returning error estimate and diagnostics.
pub fn meijer_g_detailed(spec: &MeijerGSpec, z: f64, opts: &GEvalOptions) -> Result<GValue> {
    opts.validate()?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Meijer G argument must be positive and finite, got {z}")));
    }
    let out = match opts.method {
        GMethod::Contour => contour(spec, z, opts)?,
        GMethod::ResidueSeries => residue_series(spec, z, opts)?,
        GMethod::Auto => {
            let mut v = contour(spec, z, opts)?;
            v.diagnostics.method = GMethod::Auto;
            v.diagnostics.crosscheck = cross_check(spec, z, opts, v.value);
            v
        }
        GMethod::Hybrid => match residue_series(spec, z, opts) {
            Ok(v) if v.value.is_finite() && v.abs_err <= 0.1 * opts.rel_tol * v.value.abs() => v,
            _ => contour(spec, z, opts)?,
        },
    };
    debug!(
        "meijer_g G^{{{},{}}}_{{{},{}}}(z={:e}) a={:?} b={:?} -> {:e} ±{:e} [{:?}, c={:?}, nodes={}, tail={:e}, residues={}, terms={}, check={:?}]",
        spec.m, spec.n, spec.p(), spec.q(), z, spec.a, spec.b, out.value, out.abs_err,
        out.diagnostics.method, out.diagnostics.abscissa, out.diagnostics.nodes,
        out.diagnostics.tail_estimate, out.diagnostics.crossed_residues,
        out.diagnostics.series_terms, out.diagnostics.crosscheck
    );
    Ok(out)
}

/// Residue-series evaluation; refuses when poles of the `Γ(b_j − s)`
/// family are closer than `opts.pole_separation_min`.
pub fn meijer_g_residue_series(spec: &MeijerGSpec, z: f64, opts: &GEvalOptions) -> Result<f64> {
    let opts = opts.with_method(GMethod::ResidueSeries);
    Ok(meijer_g_detailed(spec, z, &opts)?.value)
}

fn diagnostics(spec: &MeijerGSpec, z: f64, method: GMethod) -> GDiagnostics {
    GDiagnostics {
        m: spec.m,
        n: spec.n,
        p: spec.p(),
        q: spec.q(),
        z,
        method,
        abscissa: None,
        nodes: 0,
        tail_estimate: 0.0,
        crossed_residues: 0,
        series_terms: 0,
        crosscheck: None,
    }
}

// ---------------------------------------------------------------- contour --

fn choose_abscissa(spec: &MeijerGSpec, ln_z: f64, lo: f64, hi: f64) -> f64 {
    let h = |c: f64| spec.ln_phi_envelope(c) + c * ln_z;
    // finite search bracket
    let (mut left, mut right) = (lo, hi);
    if left.is_infinite() && right.is_infinite() {
        left = -1.0;
        right = 1.0;
        // no poles on either side: only the z^s and denominator terms remain
    }
    if left.is_infinite() {
        let mut step = 1.0;
        let mut x = right - 0.5;
        let mut fx = h(x);
        loop {
            let nx = x - step;
            let fnx = h(nx);
            if !(fnx < fx) || step > 1e5 {
                left = nx;
                break;
            }
            x = nx;
            fx = fnx;
            step *= 2.0;
        }
    }
    if right.is_infinite() {
        let mut step = 1.0;
        let mut x = left + 0.5;
        let mut fx = h(x);
        loop {
            let nx = x + step;
            let fnx = h(nx);
            if !(fnx < fx) || step > 1e5 {
                right = nx;
                break;
            }
            x = nx;
            fx = fnx;
            step *= 2.0;
        }
    }
    let width = right - left;
    let margin = 1e-6 * width.max(1e-3);
    let (a0, b0) = (left + margin, right - margin);
    // coarse scan, then golden-section refinement around the best node
    const SCAN: usize = 64;
    let mut best = (f64::INFINITY, 0.5 * (a0 + b0));
    for i in 0..=SCAN {
        let x = a0 + (b0 - a0) * i as f64 / SCAN as f64;
        let fx = h(x);
        if fx < best.0 {
            best = (fx, x);
        }
    }
    let cell = (b0 - a0) / SCAN as f64;
    let (mut a, mut b) = ((best.1 - cell).max(a0), (best.1 + cell).min(b0));
    let gr = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - gr * (b - a);
    let mut x2 = a + gr * (b - a);
    let (mut f1, mut f2) = (h(x1), h(x2));
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = h(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = h(x2);
        }
        if (b - a) < 1e-10 * (1.0 + a.abs()) {
            break;
        }
    }
    let c = 0.5 * (a + b);
    // stay clear of the nearest pole by a fraction of the strip
    let guard = 0.02 * (hi - lo).min(1.0);
    c.clamp(lo + guard, hi - guard)
}

fn curvature(spec: &MeijerGSpec, c: f64) -> f64 {
    let eps = 1e-3 * (1.0 + c.abs()).min(10.0);
    let f = |x: f64| spec.ln_phi(Complex64::new(x, 0.0)).re;
    let k = (f(c + eps) - 2.0 * f(c) + f(c - eps)) / (eps * eps);
    if k.is_finite() && k > 0.0 {
        k
    } else {
        1.0
    }
}

fn contour(spec: &MeijerGSpec, z: f64, opts: &GEvalOptions) -> Result<GValue> {
    let decay = spec.decay_rate();
    if decay <= 0.0 {
        return Err(Error::NonConvergence(format!(
            "contour integrand does not decay (m + n - (p + q)/2 = {decay})"
        )));
    }
    let ln_z = z.ln();
    let (lo, hi) = spec.strip();
    let mut diag = diagnostics(spec, z, GMethod::Contour);

    let (c, crossed) = if hi - lo >= MIN_STRIP {
        (choose_abscissa(spec, ln_z, lo, hi), Vec::new())
    } else {
        shifted_abscissa(spec, opts, hi)?
    };

    let l0 = spec.ln_phi(Complex64::new(c, 0.0)).re + c * ln_z;
    let ln_integrand = |y: f64| {
        let s = Complex64::new(c, y);
        spec.ln_phi(s) + s * ln_z - l0
    };
    let integrand = |y: f64| {
        let l = ln_integrand(y);
        if l.re < -745.0 {
            0.0
        } else {
            l.exp().re / PI
        }
    };
    let magnitude = |y: f64| ln_integrand(y).re.exp() / PI;

    let sigma = 1.0 / curvature(spec, c).sqrt();
    // oscillation scale of the phase near the axis
    let phase_rate = {
        let d = 1e-4;
        ((ln_integrand(d).im - ln_integrand(0.0).im) / d).abs()
    };
    let mut width = sigma.clamp(0.05, 20.0);
    if phase_rate > 0.0 {
        width = width.min((PI / phase_rate).max(0.05));
    }

    // march outwards until the tail beyond Y is negligible
    let mut mass = magnitude(0.0) * width;
    let mut y = 0.0;
    let mut prev = magnitude(0.0);
    let tail;
    let mut steps = 0usize;
    loop {
        y += width;
        steps += 1;
        let my = magnitude(y);
        mass += my * width;
        let rate = if my > 0.0 && prev > 0.0 { (prev.ln() - my.ln()) / width } else { f64::INFINITY };
        let est = if my == 0.0 {
            0.0
        } else if rate > 0.0 {
            my / rate
        } else {
            f64::INFINITY
        };
        prev = my;
        if est <= 1e-2 * opts.rel_tol * mass && rate > 0.0 {
            tail = est;
            break;
        }
        if steps > 100_000 {
            return Err(Error::NonConvergence(format!(
                "contour tail did not decay (z={z:e}, c={c}, y={y})"
            )));
        }
    }
    let y_max = y;
    let panels = ((y_max / width).ceil() as usize).clamp(1, MAX_PANELS);
    let breaks: Vec<f64> = (0..=panels).map(|i| y_max * i as f64 / panels as f64).collect();
    let tol = Tolerance::new(0.1 * opts.rel_tol * mass, 0.0).with_max_evals(opts.max_quadrature_nodes);
    let r = integrate_breaks(integrand, &breaks, tol);
    if !r.converged && r.abs_err > 10.0 * opts.rel_tol * mass.max(r.value.abs()) {
        return Err(Error::NonConvergence(format!(
            "contour quadrature stalled (z={z:e}, err={:e}, scale={mass:e})",
            r.abs_err
        )));
    }

    let mut scaled = r.value;
    let mut err = r.abs_err + tail;
    for (s0, ln_res, sign) in &crossed {
        let w = sign * (ln_res + s0 * ln_z - l0).exp();
        scaled += w;
        err += 1e-14 * w.abs();
    }
    diag.abscissa = Some(c);
    diag.nodes = r.evals;
    diag.tail_estimate = tail * l0.exp();
    diag.crossed_residues = crossed.len();

    let scale = l0.exp();
    Ok(GValue {
        value: scaled * scale,
        abs_err: err * scale,
        scaled,
        log_scale: l0,
        diagnostics: diag,
    })
}

/// `(pole, ln|residue|, sign)`.
type Residue = (f64, f64, f64);

/// Abscissa left of the lowest `Γ(b_j − s)` pole when the separating strip
/// is too narrow, plus the residues `(pole, ln|residue|, sign)` of the
/// `Γ(1 − a_k + s)` poles that end up on the wrong side.
fn shifted_abscissa(spec: &MeijerGSpec, opts: &GEvalOptions, hi: f64) -> Result<(f64, Vec<Residue>)> {
    let left_poles = |c: f64| {
        let mut out = Vec::new();
        for (k, &ak) in spec.a[..spec.n].iter().enumerate() {
            let mut l = 0u32;
            while ak - 1.0 - l as f64 > c {
                out.push((k, l, ak - 1.0 - l as f64));
                l += 1;
            }
        }
        out
    };
    let all_poles_near = |c: f64| {
        spec.a[..spec.n]
            .iter()
            .map(|ak| {
                let d = ak - 1.0 - c;
                if d < 0.0 { -d - (-d).floor() } else { d - d.floor() }.min(1.0)
            })
            .fold(f64::INFINITY, |m, d| m.min(d.min(1.0 - d)))
    };
    let mut c = hi - 0.5;
    for offset in [0.5, 0.35, 0.65, 0.25, 0.75] {
        c = hi - offset;
        if all_poles_near(c) > 0.1 {
            break;
        }
    }
    let crossed = left_poles(c);
    let mut residues = Vec::with_capacity(crossed.len());
    for &(k, l, s0) in &crossed {
        // simplicity of the crossed pole
        for (k2, &a2) in spec.a[..spec.n].iter().enumerate() {
            if k2 == k {
                continue;
            }
            let d = a2 - 1.0 - s0;
            if d >= -opts.pole_separation_min && (d - d.round()).abs() < opts.pole_separation_min {
                return Err(Error::PoleCollision { separation: (d - d.round()).abs(), min: opts.pole_separation_min });
            }
        }
        for &bj in &spec.b[..spec.m] {
            let d = s0 - bj;
            if d >= -opts.pole_separation_min && (d - d.round()).abs() < opts.pole_separation_min {
                return Err(Error::PoleCollision { separation: (d - d.round()).abs(), min: opts.pole_separation_min });
            }
        }
        // Res_{s=s0} Γ(1 − a_k + s) = (−1)^l / l!
        let num = spec.b[..spec.m]
            .iter()
            .map(|bj| bj - s0)
            .chain(spec.a[..spec.n].iter().enumerate().filter(|(k2, _)| *k2 != k).map(|(_, a2)| 1.0 - a2 + s0));
        let den = spec.b[spec.m..].iter().map(|bj| 1.0 - bj + s0).chain(spec.a[spec.n..].iter().map(|a2| a2 - s0));
        let (ln_gr, sign_gr) = ln_gamma_ratio(num, den);
        let ln_abs = ln_gr - ln_factorial(l);
        let sign = sign_gr * if l % 2 == 0 { 1.0 } else { -1.0 };
        residues.push((s0, ln_abs, sign));
    }
    Ok((c, residues))
}

// ---------------------------------------------------------- residue series --

fn check_simple_right_poles(b: &[f64], m: usize, min_sep: f64) -> Result<()> {
    for i in 0..m {
        for j in (i + 1)..m {
            let d = b[i] - b[j];
            let sep = (d - d.round()).abs();
            if sep < min_sep {
                return Err(Error::PoleCollision { separation: sep, min: min_sep });
            }
        }
    }
    Ok(())
}

/// Signed log of the residue coefficient at `s = b_h + k` (without `z^s`).
fn residue_coefficient(spec: &MeijerGSpec, h: usize, k: u32) -> (f64, f64) {
    // arguments are formed as integer + fraction so that distances to
    // nearby poles keep full relative precision
    let s = Split::of(spec.b[h]).add_int(k as f64);
    let num = spec.b[..spec.m]
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != h)
        .map(|(_, &bj)| Split::of(bj).sub(s))
        .chain(spec.a[..spec.n].iter().map(|&ak| s.sub(Split::of(ak)).add_int(1.0)));
    let den = spec.b[spec.m..]
        .iter()
        .map(|&bj| s.sub(Split::of(bj)).add_int(1.0))
        .chain(spec.a[spec.n..].iter().map(|&ak| Split::of(ak).sub(s)));
    let (l, sg) = ln_gamma_ratio_split(num, den);
    (l - ln_factorial(k), sg * if k.is_multiple_of(2) { 1.0 } else { -1.0 })
}

/// A real number held as `int + frac` with `int` integral and
/// `|frac| <= 1/2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Split {
    int: f64,
    frac: f64,
}

impl Split {
    pub(crate) fn of(x: f64) -> Self {
        let int = x.round();
        Self { int, frac: x - int }
    }
    fn normalized(int: f64, frac: f64) -> Self {
        let shift = frac.round();
        Self { int: int + shift, frac: frac - shift }
    }
    pub(crate) fn add_int(self, k: f64) -> Self {
        Self { int: self.int + k, frac: self.frac }
    }
    pub(crate) fn sub(self, o: Self) -> Self {
        Self::normalized(self.int - o.int, self.frac - o.frac)
    }
    fn value(self) -> f64 {
        self.int + self.frac
    }
    fn is_nonpositive_integer(self) -> bool {
        self.frac == 0.0 && self.int <= 0.0
    }
}

fn ln_gamma_signed_split(x: Split) -> (f64, f64) {
    let v = x.value();
    if v >= 0.5 {
        return ln_gamma_signed_unchecked(v);
    }
    // Γ(x) = π / (sin(πx) Γ(1 − x)), sin(πx) = (−1)^int sin(π frac)
    let sf = (PI * x.frac).sin();
    let parity = if x.int.rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 };
    let (lg, sg) = ln_gamma_signed_unchecked(1.0 - x.int - x.frac);
    (PI.ln() - sf.abs().ln() - lg, sf.signum() * parity * sg)
}

fn ln_gamma_ratio_split(num: impl Iterator<Item = Split>, den: impl Iterator<Item = Split>) -> (f64, f64) {
    let mut ln_abs = 0.0;
    let mut sign = 1.0;
    for x in num {
        let (lg, sg) = ln_gamma_signed_split(x);
        ln_abs += lg;
        sign *= sg;
    }
    for x in den {
        if x.is_nonpositive_integer() {
            return (f64::NEG_INFINITY, 0.0);
        }
        let (lg, sg) = ln_gamma_signed_split(x);
        ln_abs -= lg;
        sign *= sg;
    }
    (ln_abs, sign)
}

/// Signed `ln |∏Γ(num) / ∏Γ(den)|`; a denominator pole gives sign 0.
pub(crate) fn ln_gamma_ratio(num: impl Iterator<Item = f64>, den: impl Iterator<Item = f64>) -> (f64, f64) {
    ln_gamma_ratio_split(num.map(Split::of), den.map(Split::of))
}

fn residue_series(spec: &MeijerGSpec, z: f64, opts: &GEvalOptions) -> Result<GValue> {
    let (p, q) = (spec.p(), spec.q());
    if p > q || (p == q && z >= 1.0) {
        return Err(Error::NonConvergence(format!(
            "residue series diverges for p={p}, q={q}, z={z}"
        )));
    }
    check_simple_right_poles(&spec.b, spec.m, opts.pole_separation_min)?;
    let ln_z = z.ln();
    // log-scale anchor: the dominant leading term
    let mut anchor = f64::NEG_INFINITY;
    for h in 0..spec.m {
        let (l, _) = residue_coefficient(spec, h, 0);
        anchor = anchor.max(l + spec.b[h] * ln_z);
    }
    if !anchor.is_finite() {
        anchor = 0.0;
    }
    let mut sum = 0.0;
    let mut max_term: f64 = 0.0;
    let mut terms = 0usize;
    let mut trailing_err = 0.0;
    // terms grow while k^{q-p} < z; only stop once past that peak
    let k_min = if q > p { (1.5 * z.powf(1.0 / (q - p) as f64)).ceil() as u32 + 2 } else { 0 };
    for h in 0..spec.m {
        let mut small_run = 0;
        let mut last = 0.0;
        for k in 0..5_000u32 {
            let (l, sg) = residue_coefficient(spec, h, k);
            let t = sg * (l + (spec.b[h] + k as f64) * ln_z - anchor).exp();
            sum += t;
            max_term = max_term.max(t.abs());
            terms += 1;
            last = t.abs();
            if k >= k_min && t.abs() <= 1e-2 * opts.rel_tol * sum.abs().max(1e-300) {
                small_run += 1;
                if small_run >= 3 {
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        if small_run < 3 {
            return Err(Error::NonConvergence(format!("residue series for pole family b={} did not converge", spec.b[h])));
        }
        trailing_err += last;
    }
    let scale = anchor.exp();
    let rounding = 4.0 * f64::EPSILON * max_term * terms as f64;
    if !sum.is_finite() || trailing_err + rounding > 1e-3 * sum.abs() {
        return Err(Error::NonConvergence(format!(
            "residue series lost precision to cancellation at z={z:e} (largest term {max_term:e} vs sum {sum:e})"
        )));
    }
    let mut diag = diagnostics(spec, z, GMethod::ResidueSeries);
    diag.series_terms = terms;
    Ok(GValue {
        value: sum * scale,
        abs_err: (trailing_err + rounding) * scale,
        scaled: sum,
        log_scale: anchor,
        diagnostics: diag,
    })
}

fn cross_check(spec: &MeijerGSpec, z: f64, opts: &GEvalOptions, contour_value: f64) -> Option<CrossCheck> {
    let mut nudge = None;
    let mut work = spec.clone();
    if check_simple_right_poles(&work.b, work.m, opts.pole_separation_min).is_err() {
        // separate colliding poles for the check only
        for i in 0..work.m {
            let delta = if i % 2 == 0 { 1e-8 } else { -1e-8 } * (i as f64 + 1.0);
            work.b[i] += delta;
        }
        nudge = Some(1e-8);
    }
    let checked_opts = GEvalOptions { pole_separation_min: 1e-12, ..*opts };
    let v = residue_series(&work, z, &checked_opts).ok()?;
    if v.abs_err > 1e-4 * v.value.abs() {
        return None;
    }
    let rel_diff = (v.value - contour_value).abs() / contour_value.abs().max(1e-300);
    if rel_diff > 1e-6 {
        log::warn!("meijer_g cross-check mismatch: contour {contour_value:e} vs series {:e}", v.value);
    }
    Some(CrossCheck { value: v.value, rel_diff, nudge })
}

/// Sum of the leading residue at each `s = b_h`, `h < m`:
/// `Σ_h z^{b_h} ∏_{j≠h} Γ(b_j − b_h) ∏_k Γ(1 − a_k + b_h) / (…)`.
/// This is the small-`z` asymptote used by high-SNR expansions.
pub fn meijer_g_leading_residues(spec: &MeijerGSpec, z: f64, pole_separation_min: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("Meijer G argument must be positive, got {z}")));
    }
    for i in 0..spec.m {
        for j in (i + 1)..spec.m {
            let sep = (spec.b[i] - spec.b[j]).abs();
            if sep < pole_separation_min {
                return Err(Error::PoleCollision { separation: sep, min: pole_separation_min });
            }
        }
    }
    let ln_z = z.ln();
    let mut sum = 0.0;
    for h in 0..spec.m {
        let (l, s) = residue_coefficient(spec, h, 0);
        sum += s * (l + spec.b[h] * ln_z).exp();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: usize, n: usize, a: &[f64], b: &[f64]) -> MeijerGSpec {
        MeijerGSpec::new(m, n, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn exponential_identity() {
        let g = spec(1, 0, &[], &[0.0]);
        let opts = GEvalOptions::default();
        let v = meijer_g(&g, 1.0, &opts).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-12);
        let r = meijer_g_residue_series(&g, 0.1, &opts).unwrap();
        assert!((r - (-0.1f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn bessel_k_identity() {
        // 2 K_1(2) from a 30-digit series reference
        let g = spec(2, 0, &[], &[0.5, -0.5]);
        let v = meijer_g(&g, 1.0, &GEvalOptions::default()).unwrap();
        assert!((v - 0.279_731_763_633_044_85).abs() < 1e-11);
    }

    #[test]
    fn residue_series_two_families() {
        // 2 K_{1/2}(2) = √π e^{-2}
        let g = spec(2, 0, &[], &[0.25, -0.25]);
        let v = meijer_g_residue_series(&g, 1.0, &GEvalOptions::default()).unwrap();
        let exact = std::f64::consts::PI.sqrt() * (-2.0f64).exp();
        assert!((v - exact).abs() < 1e-12, "{v}");
        let c = meijer_g(&g, 1.0, &GEvalOptions::default()).unwrap();
        assert!((c - exact).abs() < 1e-12, "{c}");
    }

    #[test]
    fn residue_series_runs_past_term_peak() {
        // terms grow until k^{q-p} ~ z before decaying
        let g = spec(3, 0, &[2.21], &[1.21, 3.1347604876190362, 2.8376229978567619]);
        let opts = GEvalOptions::default();
        let z = 406.0;
        let c = meijer_g(&g, z, &opts).unwrap();
        let h = meijer_g(&g, z, &opts.with_method(GMethod::Hybrid)).unwrap();
        assert!(((h - c) / c).abs() < 1e-9, "{h} vs {c}");
        // the plain series cancels catastrophically here and must say so
        match meijer_g_residue_series(&g, z, &opts) {
            Ok(r) => assert!(((r - c) / c).abs() < 1e-6, "{r} vs {c}"),
            Err(e) => assert!(matches!(e, Error::NonConvergence(_))),
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(MeijerGSpec::new(2, 0, vec![], vec![0.0]).is_err());
        assert!(MeijerGSpec::new(0, 2, vec![1.0], vec![]).is_err());
        // a_1 - b_1 - 1 = 0: Γ(b - s) and Γ(1 - a + s) share the pole s = 0
        assert!(MeijerGSpec::new(1, 1, vec![1.0], vec![0.0]).is_err());
    }

    #[test]
    fn argument_domain() {
        let g = spec(1, 0, &[], &[0.0]);
        assert!(meijer_g(&g, 0.0, &GEvalOptions::default()).is_err());
        assert!(meijer_g(&g, -1.0, &GEvalOptions::default()).is_err());
    }

    #[test]
    fn residue_series_refuses_collisions() {
        let g = spec(2, 0, &[], &[0.0, 1.0]);
        let err = meijer_g_residue_series(&g, 0.5, &GEvalOptions::default()).unwrap_err();
        assert!(matches!(err, Error::PoleCollision { .. }));
        // contour handles the coincident case: G^{2,0}_{0,2}(z|0,1) = 2 z^{1/2} K_1(2√z)
        let v = meijer_g(&g, 1.0, &GEvalOptions::default()).unwrap();
        assert!((v - 0.279_731_763_633_044_85).abs() < 1e-11);
    }

    #[test]
    fn auto_reports_crosscheck_and_nudge() {
        let g = spec(2, 0, &[], &[0.0, 1.0]);
        let v = meijer_g_detailed(&g, 0.2, &GEvalOptions::default().with_method(GMethod::Auto)).unwrap();
        let cc = v.diagnostics.crosscheck.expect("cross-check ran");
        assert_eq!(cc.nudge, Some(1e-8));
        assert!(cc.rel_diff < 1e-5, "{cc:?} {}", v.value);
    }

    #[test]
    fn narrow_strip_uses_crossed_residues() {
        // G^{1,1}_{1,1}(z | a; b) = Γ(1 - a + b) z^b (1 + z)^{a - b - 1}
        // a = 1.0005, b = 0: left pole at 5e-4, right pole at 0 -> empty strip
        let (a, b) = (1.0005, 0.0);
        let g = spec(1, 1, &[a], &[b]);
        let z: f64 = 0.7;
        let exact = crate::specfun::gamma::gamma(1.0 - a + b).unwrap() * z.powf(b) * (1.0 + z).powf(a - b - 1.0);
        // c* = 1 > 0 so the contour converges
        let v = meijer_g_detailed(&g, z, &GEvalOptions::default()).unwrap();
        assert!(v.diagnostics.crossed_residues > 0);
        assert!((v.value - exact).abs() < 1e-8 * exact.abs(), "{} vs {}", v.value, exact);
    }
}
