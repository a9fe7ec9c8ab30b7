//! η-μ fading (Format 1, integer μ).
//!
//! Two exact forms of the CDF are kept. The finite Erlang mixture has
//! alternating weights of size `(h/H)^μ` and loses digits as `η → 1`; the
//! negative-binomial mixture of gamma laws `Γ(2μ + 2k, 2μh/γ̄₁)` with ratio
//! `(H/h)²` has positive weights and converges fast exactly there.

use crate::channels::mixture::{ErlangMixture, ErlangTerm};
use crate::error::{domain, Result};
use crate::specfun::gamma::{ln_factorial, ln_gamma_pos};
use crate::specfun::incgamma::gamma_lower_reg;

/// Above this `Σ|w|` the finite mixture is abandoned for the gamma series.
pub const CANCELLATION_LIMIT: f64 = 100.0;

/// Hard cap on gamma-series terms.
pub const MAX_GAMMA_SERIES_TERMS: u32 = 5000;

/// Parameters of an η-μ RF hop. `eta` is the in-phase/quadrature power
/// ratio, `mu` the number of clusters, `gamma_bar1` the linear mean SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaMuParams {
    eta: f64,
    mu: u32,
    gamma_bar1: f64,
}

impl EtaMuParams {
    pub fn new(eta: f64, mu: u32, gamma_bar1: f64) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(domain(format!("eta must be positive, got {eta}")));
        }
        if mu == 0 {
            return Err(domain("mu must be a positive integer"));
        }
        if !(gamma_bar1 > 0.0) || !gamma_bar1.is_finite() {
            return Err(domain(format!("mean RF SNR must be positive, got {gamma_bar1}")));
        }
        Ok(Self { eta, mu, gamma_bar1 })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn mu(&self) -> u32 {
        self.mu
    }
    pub fn gamma_bar1(&self) -> f64 {
        self.gamma_bar1
    }

    pub fn with_gamma_bar1(self, gamma_bar1: f64) -> Result<Self> {
        Self::new(self.eta, self.mu, gamma_bar1)
    }

    /// `h = (2 + η⁻¹ + η) / 4`
    pub fn h(&self) -> f64 {
        (2.0 + 1.0 / self.eta + self.eta) / 4.0
    }

    /// `H = (η⁻¹ − η) / 4`
    pub fn big_h(&self) -> f64 {
        (1.0 / self.eta - self.eta) / 4.0
    }

    /// Exponential rates `A_1 = 2μ(h − H)/γ̄₁`, `A_2 = 2μ(h + H)/γ̄₁`.
    pub fn rates(&self) -> [f64; 2] {
        let mu = self.mu as f64;
        [
            2.0 * mu * (self.h() - self.big_h()) / self.gamma_bar1,
            2.0 * mu * (self.h() + self.big_h()) / self.gamma_bar1,
        ]
    }

    /// `a_{n,k}` for `n ∈ {1, 2}`; `a_{1,k}` uses `(h − H)^{μ−k}`.
    pub fn coefficient(&self, n: usize, k: u32) -> f64 {
        let mu = self.mu as i32;
        let (h, hh) = (self.h(), self.big_h());
        let k_i = k as i32;
        let mag = ln_gamma_pos((self.mu + k) as f64) - ln_factorial(k) - (mu + k_i) as f64 * 2f64.ln();
        let base = mag.exp() * hh.powi(-k_i);
        match n {
            1 => {
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * base / (h - hh).powi(mu - k_i)
            }
            2 => {
                let sign = if self.mu.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * base / (hh + h).powi(mu - k_i)
            }
            _ => panic!("coefficient index n must be 1 or 2"),
        }
    }

    /// Rate `2μh/γ̄₁` shared by every gamma-series component.
    pub fn series_rate(&self) -> f64 {
        2.0 * self.mu as f64 * self.h() / self.gamma_bar1
    }

    /// `(H/h)²`, the negative-binomial success ratio.
    pub fn series_ratio(&self) -> f64 {
        let r = self.big_h() / self.h();
        r * r
    }

    /// Weight of component `k` (shape `2μ + 2k`):
    /// `Γ(μ+k)/(Γ(μ) k!) (1 − x)^μ x^k` with `x = (H/h)²`.
    pub fn series_weight(&self, k: u32) -> f64 {
        let x = self.series_ratio();
        if x == 0.0 {
            return if k == 0 { 1.0 } else { 0.0 };
        }
        let mu = self.mu as f64;
        (ln_gamma_pos(mu + k as f64) - ln_gamma_pos(mu) - ln_factorial(k) + mu * (-x).ln_1p() + k as f64 * x.ln()).exp()
    }

    /// Weight beyond component `n`, summed directly.
    pub fn series_tail(&self, n: u32) -> f64 {
        let x = self.series_ratio();
        if x == 0.0 {
            return 0.0;
        }
        let mode = ((self.mu as f64 - 1.0) * x / (1.0 - x)).max(0.0);
        let mut sum = 0.0;
        let mut k = n + 1;
        loop {
            let w = self.series_weight(k);
            sum += w;
            if (k as f64 > mode && w <= 1e-18 * sum) || w == 0.0 || k >= n + MAX_GAMMA_SERIES_TERMS {
                return sum;
            }
            k += 1;
        }
    }

    /// Whether the finite mixture is too cancellation-prone to use.
    pub fn prefers_series(&self) -> bool {
        !(self.mixture().cancellation() <= CANCELLATION_LIMIT)
    }

    /// CDF as an Erlang mixture: weights `(h/H)^μ/Γ(μ) Σ_k a_{n,k}` over
    /// `k ≤ μ − 1 − l`.
    pub fn mixture(&self) -> ErlangMixture {
        let mu = self.mu;
        let k0 = (self.h() / self.big_h()).powi(mu as i32) / ln_gamma_pos(mu as f64).exp();
        let rates = self.rates();
        let mut terms = Vec::with_capacity(2 * mu as usize);
        for (idx, &rate) in rates.iter().enumerate() {
            for l in 0..mu {
                let w: f64 = (0..(mu - l)).map(|k| self.coefficient(idx + 1, k)).sum();
                terms.push(ErlangTerm { rate, order: l, weight: k0 * w });
            }
        }
        ErlangMixture { total: 1.0, terms }
    }

    /// Closed-form CDF of the SNR.
    pub fn cdf(&self, gamma1: f64) -> f64 {
        if gamma1 <= 0.0 {
            return 0.0;
        }
        if self.prefers_series() {
            let x = self.series_rate() * gamma1;
            let shape = |k: u32| 2.0 * (self.mu + k) as f64;
            return self.sum_series(|k| gamma_lower_reg(shape(k), x).unwrap_or(f64::NAN)).clamp(0.0, 1.0);
        }
        self.mixture().cdf(gamma1).clamp(0.0, 1.0)
    }

    /// `Σ_k w_k f(k)` for `f` bounded by 1, stopped once the remaining
    /// weight is negligible.
    fn sum_series(&self, f: impl Fn(u32) -> f64) -> f64 {
        let (x, mu) = (self.series_ratio(), self.mu as f64);
        let mut sum = 0.0;
        for k in 0..MAX_GAMMA_SERIES_TERMS {
            let w = self.series_weight(k);
            sum += w * f(k);
            // past the mode the weight ratio x(μ+k)/(k+1) only shrinks
            let r = x * (mu + k as f64) / (k as f64 + 1.0);
            if w == 0.0 || (r < 1.0 && w * r / (1.0 - r) <= 1e-17) {
                break;
            }
        }
        sum
    }

    /// SNR density: the sum of two independent gamma variates of shape `μ`
    /// with rates `A_1`, `A_2`, written as a finite series.
    pub fn pdf(&self, gamma1: f64) -> f64 {
        if gamma1 <= 0.0 {
            return 0.0;
        }
        if self.prefers_series() {
            let a = self.series_rate();
            let (x, la) = (a * gamma1, a.ln());
            // Γ(s, A) density; bounded by A·pmf, so the tail rule still applies
            let dens = |k: u32| {
                let s = 2 * (self.mu + k);
                (s as f64 * la + (s - 1) as f64 * gamma1.ln() - x - ln_factorial(s - 1)).exp()
            };
            return self.sum_series(dens);
        }
        let m = self.mixture();
        // d/dx [−w e^{−Ax}(Ax)^l/l!] = w A (pmf(l, Ax) − pmf(l−1, Ax))
        m.terms
            .iter()
            .map(|t| {
                let x = t.rate * gamma1;
                let prev = if t.order == 0 { 0.0 } else { crate::channels::mixture::poisson_pmf(t.order - 1, x) };
                t.weight * t.rate * (crate::channels::mixture::poisson_pmf(t.order, x) - prev)
            })
            .sum()
    }
}

/// `F(γ₁)` of the η-μ distribution.
pub fn etamu_cdf(rf: &EtaMuParams, gamma1: f64) -> f64 {
    rf.cdf(gamma1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_coefficients() {
        let p = EtaMuParams::new(0.5, 3, 10.0).unwrap();
        assert!((p.h() - 1.125).abs() < 1e-15);
        assert!((p.big_h() - 0.375).abs() < 1e-15);
        let [a1, a2] = p.rates();
        assert!((a1 - 0.45).abs() < 1e-15);
        assert!((a2 - 0.9).abs() < 1e-15);
    }

    #[test]
    fn series_form_agrees_with_mixture() {
        for &(eta, mu) in &[(0.5, 3u32), (0.3, 2), (0.7, 1), (0.2, 4)] {
            let p = EtaMuParams::new(eta, mu, 3.0).unwrap();
            let total: f64 = (0..400).map(|k| p.series_weight(k)).sum();
            assert!((total - 1.0).abs() < 1e-13);
            let a = p.series_rate();
            for &x in &[0.1, 1.0, 4.0, 20.0] {
                let series: f64 = (0..400).map(|k| p.series_weight(k) * gamma_lower_reg(2.0 * (mu + k) as f64, a * x).unwrap()).sum();
                assert!((series - p.mixture().cdf(x)).abs() < 1e-12, "eta={eta} mu={mu} x={x}");
            }
        }
    }

    #[test]
    fn eta_one_is_nakagami() {
        // H = 0: Nakagami-m with m = 2μ
        let p = EtaMuParams::new(1.0, 2, 5.0).unwrap();
        assert!(p.prefers_series());
        for &x in &[0.5, 5.0, 20.0] {
            let exact = gamma_lower_reg(4.0, 4.0 * x / 5.0).unwrap();
            assert!((p.cdf(x) - exact).abs() < 1e-15);
        }
        let near = EtaMuParams::new(1.0 + 1e-6, 2, 5.0).unwrap();
        assert!((near.cdf(3.0) - p.cdf(3.0)).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(EtaMuParams::new(0.0, 2, 1.0).is_err());
        assert!(EtaMuParams::new(0.5, 0, 1.0).is_err());
        assert!(EtaMuParams::new(0.5, 1, -1.0).is_err());
    }

    #[test]
    fn limits() {
        let p = EtaMuParams::new(0.5, 3, 10.0).unwrap();
        assert_eq!(p.cdf(0.0), 0.0);
        assert!(p.cdf(1e-9) < 1e-12);
        assert!((p.cdf(1e4) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mu_one_is_hypoexponential() {
        // μ = 1: sum of two exponentials with rates A1, A2
        let p = EtaMuParams::new(0.3, 1, 2.0).unwrap();
        let [a1, a2] = p.rates();
        for &x in &[0.1, 1.0, 5.0] {
            let exact = 1.0 - (a2 * (-a1 * x).exp() - a1 * (-a2 * x).exp()) / (a2 - a1);
            assert!((p.cdf(x) - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn power_ratio_symmetry() {
        for &(eta, mu) in &[(0.5, 3u32), (0.2, 2), (0.9, 1), (0.05, 4)] {
            let p = EtaMuParams::new(eta, mu, 3.0).unwrap();
            let q = EtaMuParams::new(1.0 / eta, mu, 3.0).unwrap();
            for i in 0..50 {
                let x = 0.01 * 1.2f64.powi(i);
                assert!((p.cdf(x) - q.cdf(x)).abs() < 1e-10, "eta={eta} x={x}");
            }
        }
    }

    #[test]
    fn density_matches_cdf_derivative() {
        let p = EtaMuParams::new(0.5, 3, 10.0).unwrap();
        for &x in &[0.5, 3.0, 12.0] {
            let h = 1e-5 * x;
            let fd = (p.cdf(x + h) - p.cdf(x - h)) / (2.0 * h);
            assert!((fd - p.pdf(x)).abs() < 1e-7);
        }
    }
}
