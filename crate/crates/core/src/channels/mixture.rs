//! Erlang-mixture form shared by both RF fading families.
//!
//! For integer `μ` the η-μ CDF and the truncated κ-μ CDF are both
//! `total − Σ_r w_r e^{−A_r x} (A_r x)^{l_r} / l_r!`. Every end-to-end
//! closed form is linear in that representation.

use crate::specfun::gamma::ln_factorial;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErlangTerm {
    pub rate: f64,
    pub order: u32,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErlangMixture {
    /// Limit of the CDF at infinity (1 unless the mixture is truncated).
    pub total: f64,
    pub terms: Vec<ErlangTerm>,
}

impl ErlangMixture {
    /// `Σ_r w_r e^{−A_r x} (A_r x)^{l_r} / l_r!`
    pub fn survival_part(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.weight * poisson_pmf(t.order, t.rate * x)).sum()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        self.total - self.survival_part(x)
    }

    /// Distinct rates in first-seen order.
    pub fn rates(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for t in &self.terms {
            if !out.contains(&t.rate) {
                out.push(t.rate);
            }
        }
        out
    }

    /// `Σ |w_r|`: how much rounding the alternating weights amplify.
    pub fn cancellation(&self) -> f64 {
        self.terms.iter().map(|t| t.weight.abs()).sum()
    }

    pub fn max_order(&self) -> u32 {
        self.terms.iter().map(|t| t.order).max().unwrap_or(0)
    }
}

/// `e^{−x} x^l / l!`
pub fn poisson_pmf(l: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    (l as f64 * x.ln() - x - ln_factorial(l)).exp()
}
