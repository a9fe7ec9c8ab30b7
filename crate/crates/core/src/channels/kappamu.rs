//! κ-μ fading.

use crate::channels::mixture::{ErlangMixture, ErlangTerm};
use crate::error::{domain, Error, Result};
use crate::specfun::bessel::ln_bessel_i;
use crate::specfun::gamma::ln_gamma_pos;
use crate::specfun::incgamma::{gamma_lower_reg, poisson_tail};

/// Hard cap on Poisson terms before a series is declared divergent.
pub const MAX_SERIES_TERMS: u32 = 2000;

/// Parameters of a κ-μ RF hop. Closed-form end-to-end expressions need an
/// integer `μ`; the marginal CDF and density accept any `μ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaMuParams {
    kappa: f64,
    mu: f64,
    gamma_bar1: f64,
}

/// A truncated Poisson-mixture series with its certified tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: u32,
    pub tail_bound: f64,
}

impl KappaMuParams {
    pub fn new(kappa: f64, mu: f64, gamma_bar1: f64) -> Result<Self> {
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return Err(domain(format!("kappa must be non-negative, got {kappa}")));
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(domain(format!("mu must be positive, got {mu}")));
        }
        if !(gamma_bar1 > 0.0) || !gamma_bar1.is_finite() {
            return Err(domain(format!("mean RF SNR must be positive, got {gamma_bar1}")));
        }
        Ok(Self { kappa, mu, gamma_bar1 })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn gamma_bar1(&self) -> f64 {
        self.gamma_bar1
    }

    pub fn with_gamma_bar1(self, gamma_bar1: f64) -> Result<Self> {
        Self::new(self.kappa, self.mu, gamma_bar1)
    }

    /// `A = μ(1 + κ)/γ̄₁`
    pub fn rate(&self) -> f64 {
        self.mu * (1.0 + self.kappa) / self.gamma_bar1
    }

    /// Poisson mean `κμ` of the mixing index.
    pub fn lambda(&self) -> f64 {
        self.kappa * self.mu
    }

    /// `w_i = e^{−κμ}(κμ)^i / i!`
    pub fn weight(&self, i: u32) -> f64 {
        crate::channels::mixture::poisson_pmf(i, self.lambda())
    }

    /// `μ` as an integer, if it is one.
    pub fn integer_mu(&self) -> Result<u32> {
        let r = self.mu.round();
        if (self.mu - r).abs() > 1e-12 || r < 1.0 || r > u32::MAX as f64 {
            return Err(Error::Domain(format!(
                "closed-form end-to-end expressions need an integer mu, got {}",
                self.mu
            )));
        }
        Ok(r as u32)
    }

    /// Density of the SNR.
    pub fn pdf(&self, gamma1: f64) -> f64 {
        if gamma1 <= 0.0 {
            return 0.0;
        }
        let (k, mu, a) = (self.kappa, self.mu, self.rate());
        let gamma_pdf = |shape: f64| (shape * a.ln() + (shape - 1.0) * gamma1.ln() - a * gamma1 - ln_gamma_pos(shape)).exp();
        if k == 0.0 {
            // Nakagami-m with m = μ
            return gamma_pdf(mu);
        }
        if mu < 1.0 {
            // Bessel order would be negative; sum the Poisson mixture of gamma densities.
            let mut sum = 0.0;
            for i in 0..MAX_SERIES_TERMS {
                let term = self.weight(i) * gamma_pdf(mu + i as f64);
                sum += term;
                if i as f64 > self.lambda() && term <= 1e-17 * sum {
                    break;
                }
            }
            return sum;
        }
        let arg = 2.0 * mu * (k * (1.0 + k) * gamma1 / self.gamma_bar1).sqrt();
        let ln = mu.ln() + ((mu + 1.0) / 2.0) * (1.0 + k).ln() - ((mu - 1.0) / 2.0) * k.ln() - k * mu
            + ((mu - 1.0) / 2.0) * gamma1.ln()
            - ((mu + 1.0) / 2.0) * self.gamma_bar1.ln()
            - a * gamma1
            + ln_bessel_i(mu - 1.0, arg).unwrap_or(f64::NAN);
        ln.exp()
    }

    /// CDF truncated once the certified tail drops below `tol`.
    ///
    /// After `N + 1` terms the omitted mass is
    /// `Σ_{i>N} w_i P(μ+i, Aγ₁) ≤ P(X > N) · P(μ+N+1, Aγ₁)` with `X ~ Poisson(κμ)`,
    /// because `P(μ+i, x)` decreases in `i`.
    pub fn cdf_series(&self, gamma1: f64, tol: f64) -> Result<SeriesValue> {
        if gamma1 <= 0.0 {
            return Ok(SeriesValue { value: 0.0, terms_used: 1, tail_bound: 0.0 });
        }
        let x = self.rate() * gamma1;
        let lambda = self.lambda();
        let mut sum = 0.0;
        for n in 0..MAX_SERIES_TERMS {
            sum += self.weight(n) * gamma_lower_reg(self.mu + n as f64, x)?;
            let bound = if lambda == 0.0 {
                0.0
            } else {
                poisson_tail(lambda, n) * gamma_lower_reg(self.mu + n as f64 + 1.0, x)?
            };
            if bound <= tol {
                return Ok(SeriesValue { value: sum.clamp(0.0, 1.0), terms_used: n + 1, tail_bound: bound });
            }
        }
        Err(Error::NonConvergence(format!(
            "kappa-mu CDF did not reach tol {tol:e} within {MAX_SERIES_TERMS} terms"
        )))
    }

    /// CDF to absolute accuracy near machine precision, using the downward
    /// recurrence `P(a+1, x) = P(a, x) − x^a e^{−x}/Γ(a+1)`.
    pub fn cdf(&self, gamma1: f64) -> f64 {
        if gamma1 <= 0.0 {
            return 0.0;
        }
        let x = self.rate() * gamma1;
        let lambda = self.lambda();
        let Ok(mut p) = gamma_lower_reg(self.mu, x) else {
            return f64::NAN;
        };
        // x^{μ+i} e^{−x} / Γ(μ+i+1)
        let mut d = (self.mu * x.ln() - x - ln_gamma_pos(self.mu + 1.0)).exp();
        let mut w = (-lambda).exp();
        let mut mass = 0.0;
        let mut sum = 0.0;
        for i in 0..MAX_SERIES_TERMS {
            sum += w * p;
            mass += w;
            if (1.0 - mass) * p <= 1e-17 || (i as f64 > lambda && w * p <= 1e-18 * sum) {
                break;
            }
            p = (p - d).max(0.0);
            d *= x / (self.mu + i as f64 + 1.0);
            w *= lambda / (i as f64 + 1.0);
        }
        sum.clamp(0.0, 1.0)
    }

    /// First `n_terms` Poisson components written as an Erlang mixture.
    /// `total` is the retained Poisson mass.
    pub fn mixture(&self, n_terms: u32) -> Result<ErlangMixture> {
        let mu = self.integer_mu()?;
        let rate = self.rate();
        let w: Vec<f64> = (0..n_terms).map(|i| self.weight(i)).collect();
        let total: f64 = w.iter().sum();
        // weight of order l: Σ_{i : l < μ+i} w_i
        let max_order = mu + n_terms - 1;
        let mut terms = Vec::with_capacity(max_order as usize);
        for l in 0..max_order {
            let first = l.saturating_sub(mu - 1) as usize;
            let weight: f64 = w[first.min(w.len())..].iter().sum();
            terms.push(ErlangTerm { rate, order: l, weight });
        }
        Ok(ErlangMixture { total, terms })
    }
}

/// Density of the κ-μ SNR.
pub fn kappamu_pdf(rf: &KappaMuParams, gamma1: f64) -> f64 {
    rf.pdf(gamma1)
}

/// Truncated κ-μ CDF with the number of terms used and the tail bound.
pub fn kappamu_cdf(rf: &KappaMuParams, gamma1: f64, tol: f64) -> Result<SeriesValue> {
    rf.cdf_series(gamma1, tol)
}

/// Nakagami-m SNR CDF `P(m, mγ/γ̄)`.
pub fn nakagami_cdf(m: f64, gamma_bar: f64, gamma: f64) -> Result<f64> {
    if gamma <= 0.0 {
        return Ok(0.0);
    }
    gamma_lower_reg(m, m * gamma / gamma_bar)
}
