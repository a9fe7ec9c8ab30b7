//! End-to-end statistics of the fixed-gain RF/FSO relay link
//! `γ_eq = γ₁γ₂/(c + γ₂)`: CDF, density, outage, high-SNR outage and BER.

mod appendix;
mod kernel;

pub use appendix::mellin_exp_g_integral;

use crate::channels::kappamu::MAX_SERIES_TERMS;
use crate::channels::{ErlangMixture, ErlangTerm, EtaMuParams, FsoChannelParams, KappaMuParams, RfFading};
use crate::error::{domain, Error, Result};
use crate::specfun::incgamma::poisson_tail;
use crate::specfun::meijer::{GDiagnostics, GEvalOptions};
use kernel::{ber_order, Acc, Kernel, RateCache};

/// Relay gain constant, outage threshold and Meijer-G kernel settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    /// Fixed-gain constant `c = G²/N₀`.
    pub c: f64,
    /// Outage threshold (linear).
    pub gamma_th: f64,
    /// Options for every G evaluation in the closed forms.
    pub kernel: GEvalOptions,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self { c: 1.0, gamma_th: 1.0, kernel: GEvalOptions::default() }
    }
}

impl SystemConfig {
    pub fn new(c: f64, gamma_th: f64) -> Result<Self> {
        let s = Self { c, gamma_th, ..Default::default() };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) || !self.c.is_finite() {
            return Err(domain(format!("relay gain constant c must be positive, got {}", self.c)));
        }
        if !(self.gamma_th > 0.0) || !self.gamma_th.is_finite() {
            return Err(domain(format!("outage threshold must be positive, got {}", self.gamma_th)));
        }
        Ok(())
    }
}

/// Binary modulation in the unified form `P_b = Γ(p, qγ)/(2Γ(p))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulationScheme {
    pub p: f64,
    pub q: f64,
    pub name: String,
}

impl ModulationScheme {
    pub fn new(name: impl Into<String>, p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0 && q > 0.0) || !p.is_finite() || !q.is_finite() {
            return Err(domain(format!("modulation parameters must be positive, got p = {p}, q = {q}")));
        }
        Ok(Self { p, q, name: name.into() })
    }

    pub fn cbfsk() -> Self {
        Self { p: 0.5, q: 0.5, name: "CBFSK".into() }
    }
    pub fn nbfsk() -> Self {
        Self { p: 1.0, q: 0.5, name: "NBFSK".into() }
    }
    pub fn cbpsk() -> Self {
        Self { p: 0.5, q: 1.0, name: "CBPSK".into() }
    }
    pub fn dbpsk() -> Self {
        Self { p: 1.0, q: 1.0, name: "DBPSK".into() }
    }

    /// Built-in schemes.
    pub fn table() -> [Self; 4] {
        [Self::cbfsk(), Self::nbfsk(), Self::cbpsk(), Self::dbpsk()]
    }

    /// Case-insensitive lookup in [`ModulationScheme::table`].
    pub fn by_name(name: &str) -> Option<Self> {
        Self::table().into_iter().find(|m| m.name.eq_ignore_ascii_case(name))
    }
}

/// Closed-form result with its error budget.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    /// Reported value, clamped into the valid range when the excursion is
    /// within `abs_error_est`.
    pub value: f64,
    /// Value before clamping.
    pub raw_value: f64,
    /// Summed kernel error bounds plus series tail bound.
    pub abs_error_est: f64,
    /// Poisson terms retained (κ-μ only).
    pub terms_used: Option<u32>,
    /// Certified series tail bound (0 for finite sums).
    pub tail_bound: f64,
    pub clamped: bool,
    pub diagnostics: Vec<GDiagnostics>,
}

impl EvalResult {
    fn new(acc: Acc, tail: f64, terms_used: Option<u32>, lo: f64, hi: f64) -> Self {
        let raw = acc.value;
        let eps = acc.err + tail;
        let (value, clamped) = if raw < lo && raw >= lo - eps {
            (lo, true)
        } else if raw > hi && raw <= hi + eps {
            (hi, true)
        } else {
            (raw, false)
        };
        Self { value, raw_value: raw, abs_error_est: eps, terms_used, tail_bound: tail, clamped, diagnostics: acc.diags }
    }
}

/// Which functional of the end-to-end law is being summed.
#[derive(Debug, Clone, Copy)]
enum Functional {
    Cdf(f64),
    Pdf(f64),
    Ber { p: f64, q: f64 },
}

impl Functional {
    /// Value of a single untruncated component: `total − Σ Φ_l` uses this as base.
    fn base(self) -> f64 {
        match self {
            Functional::Cdf(_) => 1.0,
            Functional::Pdf(_) => 0.0,
            Functional::Ber { .. } => 0.5,
        }
    }

    fn range(self) -> (f64, f64) {
        match self {
            Functional::Cdf(_) => (0.0, 1.0),
            Functional::Pdf(_) => (0.0, f64::INFINITY),
            Functional::Ber { .. } => (0.0, 0.5),
        }
    }
}

/// `Φ_l` for a fixed rate, computed on demand.
struct OrderSeries<'k> {
    kernel: &'k Kernel,
    functional: Functional,
    rate: f64,
    cache: Option<RateCache<'k>>,
    terms: Vec<Acc>,
}

impl<'k> OrderSeries<'k> {
    fn new(kernel: &'k Kernel, functional: Functional, rate: f64) -> Self {
        let cache = match functional {
            Functional::Cdf(g) | Functional::Pdf(g) => Some(RateCache::new(kernel, rate, g)),
            Functional::Ber { .. } => None,
        };
        Self { kernel, functional, rate, cache, terms: Vec::new() }
    }

    fn get(&mut self, l: u32) -> Result<&Acc> {
        while self.terms.len() <= l as usize {
            let order = self.terms.len() as u32;
            let acc = match (self.functional, self.cache.as_mut()) {
                (Functional::Cdf(_), Some(c)) => c.cdf_order(order)?,
                (Functional::Pdf(_), Some(c)) => c.pdf_order(order)?,
                (Functional::Ber { p, q }, _) => ber_order(self.kernel, self.rate, order, p, q)?,
                _ => unreachable!("rate cache exists for CDF and PDF"),
            };
            self.terms.push(acc);
        }
        Ok(&self.terms[l as usize])
    }

    fn into_diags(self) -> Vec<GDiagnostics> {
        let mut d = self.cache.map(|c| c.diags).unwrap_or_default();
        for t in self.terms {
            d.extend(t.diags);
        }
        d
    }
}

/// `base·total − Σ_r w_r Φ_{l_r}(A_r)` over a finite mixture.
fn eval_mixture(mix: &ErlangMixture, fso: &FsoChannelParams, sys: &SystemConfig, functional: Functional) -> Result<EvalResult> {
    let kernel = Kernel::new(fso, sys, &sys.kernel);
    let mut acc = Acc { value: functional.base() * mix.total, ..Default::default() };
    for rate in mix.rates() {
        let mut series = OrderSeries::new(&kernel, functional, rate);
        for term in mix.terms.iter().filter(|t| t.rate == rate) {
            let phi = series.get(term.order)?;
            acc.add(phi, -term.weight);
        }
        acc.diags.extend(series.into_diags());
    }
    let (lo, hi) = functional.range();
    Ok(EvalResult::new(acc, 0.0, None, lo, hi))
}

/// Mixture of gamma laws with one rate: component `i` has integer shape
/// `first + step·i` and weight `weight(i)`; `tail(n)` is the weight beyond
/// component `n`.
struct GammaSeries<'a> {
    rate: f64,
    first: u32,
    step: u32,
    weight: Box<dyn Fn(u32) -> f64 + 'a>,
    tail: Box<dyn Fn(u32) -> f64 + 'a>,
}

impl<'a> GammaSeries<'a> {
    fn kappamu(rf: &'a KappaMuParams) -> Result<Self> {
        let lambda = rf.lambda();
        Ok(Self {
            rate: rf.rate(),
            first: rf.integer_mu()?,
            step: 1,
            weight: Box::new(move |i| rf.weight(i)),
            tail: Box::new(move |n| poisson_tail(lambda, n)),
        })
    }

    fn etamu(rf: &'a EtaMuParams) -> Self {
        Self {
            rate: rf.series_rate(),
            first: 2 * rf.mu(),
            step: 2,
            weight: Box::new(move |k| rf.series_weight(k)),
            tail: Box::new(move |n| rf.series_tail(n)),
        }
    }

    fn shape(&self, i: u32) -> u32 {
        self.first + self.step * i
    }
}

/// Gamma series truncated by a certified tail bound.
///
/// Component `i` contributes `w_i (base − Σ_{l<s_i} Φ_l)`. For the CDF and
/// BER the component value decreases in `i`, so the omitted tail is at most
/// `P(I > N)` times the value of component `N+1`.
fn eval_series(gs: &GammaSeries, fso: &FsoChannelParams, sys: &SystemConfig, functional: Functional, tol: f64) -> Result<EvalResult> {
    if !(tol > 0.0) {
        return Err(domain(format!("series tolerance must be positive, got {tol}")));
    }
    let kernel = Kernel::new(fso, sys, &sys.kernel);
    let mut series = OrderSeries::new(&kernel, functional, gs.rate);
    let base = functional.base();
    // running Σ_{l<s_i} Φ_l
    let mut partial = Acc::default();
    let mut next_order = 0u32;
    let mut advance = |series: &mut OrderSeries, partial: &mut Acc, upto: u32| -> Result<()> {
        while next_order < upto {
            let phi = series.get(next_order)?.clone();
            partial.add(&phi, 1.0);
            next_order += 1;
        }
        Ok(())
    };
    let (lo, hi) = functional.range();
    let mut acc = Acc::default();
    for n in 0..MAX_SERIES_TERMS {
        advance(&mut series, &mut partial, gs.shape(n))?;
        let w = (gs.weight)(n);
        acc.value += w * (base - partial.value);
        acc.err += w * partial.err;
        let tail_mass = (gs.tail)(n);
        if tail_mass == 0.0 {
            acc.diags = series.into_diags();
            return Ok(EvalResult::new(acc, 0.0, Some(n + 1), lo, hi));
        }
        advance(&mut series, &mut partial, gs.shape(n + 1))?;
        let next = base - partial.value;
        let bound = match functional {
            Functional::Cdf(_) | Functional::Ber { .. } => tail_mass * next.max(0.0) + tail_mass * partial.err,
            // The density is not monotone in i; use the next component as a scale.
            Functional::Pdf(_) => tail_mass * next.abs() * 2.0,
        };
        if bound <= tol {
            acc.diags = series.into_diags();
            return Ok(EvalResult::new(acc, bound, Some(n + 1), lo, hi));
        }
    }
    Err(Error::NonConvergence(format!("gamma series did not reach tol {tol:e} within {MAX_SERIES_TERMS} terms")))
}

fn eval_kappamu(rf: &KappaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, functional: Functional, tol: f64) -> Result<EvalResult> {
    eval_series(&GammaSeries::kappamu(rf)?, fso, sys, functional, tol)
}

/// Finite Erlang form unless its weights cancel badly, then the gamma series.
fn eval_etamu(rf: &EtaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, functional: Functional) -> Result<EvalResult> {
    if rf.prefers_series() {
        eval_series(&GammaSeries::etamu(rf), fso, sys, functional, DEFAULT_SERIES_TOL)
    } else {
        eval_mixture(&rf.mixture(), fso, sys, functional)
    }
}

fn check_gamma(gamma: f64, strict: bool) -> Result<()> {
    if gamma.is_nan() || gamma < 0.0 || (strict && gamma == 0.0) || gamma.is_infinite() {
        return Err(domain(format!("SNR argument must be {} and finite, got {gamma}", if strict { "positive" } else { "non-negative" })));
    }
    Ok(())
}

fn zero_result() -> EvalResult {
    EvalResult::new(Acc::default(), 0.0, None, 0.0, 1.0)
}

/// End-to-end CDF for η-μ RF fading.
pub fn cdf_etamu_gg(rf: &EtaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, gamma: f64) -> Result<EvalResult> {
    sys.validate()?;
    check_gamma(gamma, false)?;
    if gamma == 0.0 {
        return Ok(zero_result());
    }
    eval_etamu(rf, fso, sys, Functional::Cdf(gamma))
}

/// End-to-end CDF for κ-μ RF fading, Poisson series truncated at `tol`.
pub fn cdf_kappamu_gg(rf: &KappaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, gamma: f64, tol: f64) -> Result<EvalResult> {
    sys.validate()?;
    check_gamma(gamma, false)?;
    if gamma == 0.0 {
        return Ok(EvalResult { terms_used: Some(1), ..zero_result() });
    }
    eval_kappamu(rf, fso, sys, Functional::Cdf(gamma), tol)
}

/// End-to-end density for η-μ RF fading.
pub fn pdf_etamu_gg(rf: &EtaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, gamma: f64) -> Result<EvalResult> {
    sys.validate()?;
    check_gamma(gamma, true)?;
    eval_etamu(rf, fso, sys, Functional::Pdf(gamma))
}

/// End-to-end density for κ-μ RF fading.
pub fn pdf_kappamu_gg(rf: &KappaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, gamma: f64, tol: f64) -> Result<EvalResult> {
    sys.validate()?;
    check_gamma(gamma, true)?;
    eval_kappamu(rf, fso, sys, Functional::Pdf(gamma), tol)
}

/// Default series tolerance for κ-μ evaluations driven through [`RfFading`].
pub const DEFAULT_SERIES_TOL: f64 = 1e-10;

/// End-to-end CDF for either RF family.
pub fn cdf(rf: &RfFading, fso: &FsoChannelParams, sys: &SystemConfig, gamma: f64, tol: f64) -> Result<EvalResult> {
    match rf {
        RfFading::EtaMu(p) => cdf_etamu_gg(p, fso, sys, gamma),
        RfFading::KappaMu(p) => cdf_kappamu_gg(p, fso, sys, gamma, tol),
    }
}

/// End-to-end density for either RF family.
pub fn pdf(rf: &RfFading, fso: &FsoChannelParams, sys: &SystemConfig, gamma: f64, tol: f64) -> Result<EvalResult> {
    match rf {
        RfFading::EtaMu(p) => pdf_etamu_gg(p, fso, sys, gamma),
        RfFading::KappaMu(p) => pdf_kappamu_gg(p, fso, sys, gamma, tol),
    }
}

/// Outage probability `P(γ_eq < γ_th)`.
pub fn outage(rf: &RfFading, fso: &FsoChannelParams, sys: &SystemConfig, tol: f64) -> Result<EvalResult> {
    cdf(rf, fso, sys, sys.gamma_th, tol)
}

fn asymptotic(mix: &ErlangMixture, fso: &FsoChannelParams, sys: &SystemConfig) -> Result<f64> {
    let kernel = Kernel::new(fso, sys, &sys.kernel);
    let mut value = mix.total;
    for rate in mix.rates() {
        let cache = RateCache::new(&kernel, rate, sys.gamma_th);
        for term in mix.terms.iter().filter(|t| t.rate == rate) {
            value -= term.weight * cache.asymptotic_order(term.order)?;
        }
    }
    Ok(value)
}

fn asymptotic_series(gs: &GammaSeries, fso: &FsoChannelParams, sys: &SystemConfig, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(domain(format!("series tolerance must be positive, got {tol}")));
    }
    let kernel = Kernel::new(fso, sys, &sys.kernel);
    let cache = RateCache::new(&kernel, gs.rate, sys.gamma_th);
    let (mut value, mut partial, mut next_order) = (0.0, 0.0, 0u32);
    for n in 0..MAX_SERIES_TERMS {
        while next_order < gs.shape(n) {
            partial += cache.asymptotic_order(next_order)?;
            next_order += 1;
        }
        value += (gs.weight)(n) * (1.0 - partial);
        if (gs.tail)(n) <= tol {
            return Ok(value);
        }
    }
    Err(Error::NonConvergence("asymptote series".into()))
}

/// High-SNR outage for η-μ RF fading: every `G` replaced by the sum of its
/// leading residues. Uses the gamma series when the finite form cancels.
pub fn outage_asymptotic_etamu(rf: &EtaMuParams, fso: &FsoChannelParams, sys: &SystemConfig) -> Result<f64> {
    sys.validate()?;
    if rf.prefers_series() {
        asymptotic_series(&GammaSeries::etamu(rf), fso, sys, DEFAULT_SERIES_TOL)
    } else {
        asymptotic(&rf.mixture(), fso, sys)
    }
}

/// High-SNR outage for κ-μ RF fading; the Poisson series keeps terms until
/// the omitted Poisson mass is below `tol`.
pub fn outage_asymptotic_kappamu(rf: &KappaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, tol: f64) -> Result<f64> {
    sys.validate()?;
    asymptotic_series(&GammaSeries::kappamu(rf)?, fso, sys, tol)
}

/// BER for η-μ RF fading.
pub fn ber_etamu_gg(rf: &EtaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, modulation: &ModulationScheme) -> Result<EvalResult> {
    sys.validate()?;
    eval_etamu(rf, fso, sys, Functional::Ber { p: modulation.p, q: modulation.q })
}

/// BER for κ-μ RF fading, Poisson series truncated at `tol`.
pub fn ber_kappamu_gg(rf: &KappaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, modulation: &ModulationScheme, tol: f64) -> Result<EvalResult> {
    sys.validate()?;
    eval_kappamu(rf, fso, sys, Functional::Ber { p: modulation.p, q: modulation.q }, tol)
}

/// BER for η-μ RF fading without pointing errors (`ξ → ∞`); `fso.xi` is ignored.
pub fn ber_no_pointing_etamu(rf: &EtaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, modulation: &ModulationScheme) -> Result<EvalResult> {
    ber_etamu_gg(rf, &fso.without_pointing(), sys, modulation)
}

/// BER for κ-μ RF fading without pointing errors; `fso.xi` is ignored.
pub fn ber_no_pointing_kappamu(rf: &KappaMuParams, fso: &FsoChannelParams, sys: &SystemConfig, modulation: &ModulationScheme, tol: f64) -> Result<EvalResult> {
    ber_kappamu_gg(rf, &fso.without_pointing(), sys, modulation, tol)
}

/// BER for either RF family.
pub fn ber(rf: &RfFading, fso: &FsoChannelParams, sys: &SystemConfig, modulation: &ModulationScheme, tol: f64) -> Result<EvalResult> {
    match rf {
        RfFading::EtaMu(p) => ber_etamu_gg(p, fso, sys, modulation),
        RfFading::KappaMu(p) => ber_kappamu_gg(p, fso, sys, modulation, tol),
    }
}

/// High-SNR outage for either RF family.
pub fn outage_asymptotic(rf: &RfFading, fso: &FsoChannelParams, sys: &SystemConfig, tol: f64) -> Result<f64> {
    match rf {
        RfFading::EtaMu(p) => outage_asymptotic_etamu(p, fso, sys),
        RfFading::KappaMu(p) => outage_asymptotic_kappamu(p, fso, sys, tol),
    }
}

/// Nakagami-m RF hop over the FSO hop:
/// `1 − Σ_{l<m} E[e^{−mγ(1+c/γ₂)/γ̄₁}(mγ(1+c/γ₂)/γ̄₁)^l/l!]`.
pub fn cdf_nakagami_gg(m: u32, gamma_bar1: f64, fso: &FsoChannelParams, sys: &SystemConfig, gamma: f64) -> Result<EvalResult> {
    sys.validate()?;
    check_gamma(gamma, false)?;
    if m == 0 || !(gamma_bar1 > 0.0) {
        return Err(domain(format!("Nakagami parameters must be positive, got m = {m}, mean = {gamma_bar1}")));
    }
    if gamma == 0.0 {
        return Ok(zero_result());
    }
    let rate = m as f64 / gamma_bar1;
    let mix = ErlangMixture { total: 1.0, terms: (0..m).map(|l| ErlangTerm { rate, order: l, weight: 1.0 }).collect() };
    eval_mixture(&mix, fso, sys, Functional::Cdf(gamma))
}

/// Rayleigh RF hop over the FSO hop:
/// `1 − e^{−γ/γ̄₁} C_t G^{M,0}_{t,M}(βγ/γ̄₁ | ω; τ(0))`.
pub fn cdf_rayleigh_gg(gamma_bar1: f64, fso: &FsoChannelParams, sys: &SystemConfig, gamma: f64) -> Result<EvalResult> {
    sys.validate()?;
    check_gamma(gamma, false)?;
    if !(gamma_bar1 > 0.0) {
        return Err(domain(format!("mean RF SNR must be positive, got {gamma_bar1}")));
    }
    if gamma == 0.0 {
        return Ok(zero_result());
    }
    let kernel = Kernel::new(fso, sys, &sys.kernel);
    let x = gamma / gamma_bar1;
    let g = crate::specfun::meijer_g_detailed(&kernel.cdf_spec(0)?, kernel.beta() * x, &sys.kernel)?;
    let (v, e) = g.scaled_by(kernel.ln_ct() - x);
    let acc = Acc { value: 1.0 - v, err: e, diags: vec![g.diagnostics] };
    Ok(EvalResult::new(acc, 0.0, None, 0.0, 1.0))
}
