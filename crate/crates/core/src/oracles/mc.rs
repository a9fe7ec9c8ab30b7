//! Seeded Monte-Carlo simulation of the relayed link.
//!
//! Samples are drawn in fixed-size blocks; block `k` uses the ChaCha8 stream
//! `k` of the configured seed, and block sums are merged in block order, so
//! the estimate does not depend on how blocks are spread over threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson};
use rayon::prelude::*;

use super::Estimate;
use crate::channels::{EtaMuParams, FsoChannelParams, KappaMuParams, RfFading};
use crate::endtoend::{ModulationScheme, SystemConfig};
use crate::error::{domain, Result};
use crate::specfun::incgamma::gamma_upper_reg;

/// Samples per RNG stream.
pub const BLOCK_SIZE: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub seed: u64,
    pub n_samples: u64,
    /// Worker lanes; the estimate is identical for every value.
    pub n_streams: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        Self { seed: 42, n_samples: 1_000_000, n_streams: 1 }
    }
}

impl McConfig {
    pub fn new(seed: u64, n_samples: u64) -> Self {
        Self { seed, n_samples, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 1000 {
            return Err(domain(format!("Monte-Carlo needs at least 1000 samples, got {}", self.n_samples)));
        }
        if self.n_streams == 0 {
            return Err(domain("n_streams must be at least 1"));
        }
        Ok(())
    }
}

/// RNG for block `index` of `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// η-μ SNR: `γ̄₁(ηU + V)/(μ(1+η))` with `U, V ~ Gamma(μ, 1)`.
pub fn sample_etamu<R: Rng + ?Sized>(rf: &EtaMuParams, rng: &mut R) -> f64 {
    let g = Gamma::new(rf.mu() as f64, 1.0).expect("valid shape");
    let (u, v) = (g.sample(rng), g.sample(rng));
    rf.gamma_bar1() * (rf.eta() * u + v) / (rf.mu() as f64 * (1.0 + rf.eta()))
}

/// κ-μ SNR: `N ~ Poisson(κμ)`, `γ₁ = Gamma(μ + N, 1)/A`.
pub fn sample_kappamu<R: Rng + ?Sized>(rf: &KappaMuParams, rng: &mut R) -> f64 {
    let lambda = rf.lambda();
    let n = if lambda > 0.0 { Poisson::new(lambda).expect("positive mean").sample(rng) } else { 0.0 };
    Gamma::new(rf.mu() + n, 1.0).expect("valid shape").sample(rng) / rf.rate()
}

/// FSO SNR: `I = X·Y·P` with unit-mean gamma `X`, `Y` and pointing loss
/// `P = W^{1/ξ²}`, mapped by `γ₂ = κ_t (I/d)^t`.
pub fn sample_gg_pointing<R: Rng + ?Sized>(fso: &FsoChannelParams, rng: &mut R) -> f64 {
    let x = Gamma::new(fso.a(), 1.0 / fso.a()).expect("valid shape").sample(rng);
    let y = Gamma::new(fso.b(), 1.0 / fso.b()).expect("valid shape").sample(rng);
    let p = if fso.has_pointing_errors() {
        let w: f64 = 1.0 - rng.random::<f64>();
        w.powf(1.0 / (fso.xi() * fso.xi()))
    } else {
        1.0
    };
    let i = x * y * p / fso.d();
    fso.kappa_t() * i.powi(fso.t() as i32)
}

/// One RF sample.
pub fn sample_rf<R: Rng + ?Sized>(rf: &RfFading, rng: &mut R) -> f64 {
    match rf {
        RfFading::EtaMu(p) => sample_etamu(p, rng),
        RfFading::KappaMu(p) => sample_kappamu(p, rng),
    }
}

/// `γ₁γ₂/(c + γ₂)`
pub fn end_to_end_snr(gamma1: f64, gamma2: f64, c: f64) -> f64 {
    gamma1 * gamma2 / (c + gamma2)
}

/// Per-block `(Σx, Σx²)` of `score(γ_eq)`, merged in block order.
fn simulate(
    rf: &RfFading,
    fso: &FsoChannelParams,
    sys: &SystemConfig,
    mc: &McConfig,
    score: impl Fn(f64) -> f64 + Sync,
) -> Result<(f64, f64, u64)> {
    mc.validate()?;
    sys.validate()?;
    let n_blocks = mc.n_samples.div_ceil(BLOCK_SIZE);
    let block = |k: u64| {
        let mut rng = stream(mc.seed, k);
        let len = BLOCK_SIZE.min(mc.n_samples - k * BLOCK_SIZE);
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..len {
            let g1 = sample_rf(rf, &mut rng);
            let g2 = sample_gg_pointing(fso, &mut rng);
            let x = score(end_to_end_snr(g1, g2, sys.c));
            s += x;
            s2 += x * x;
        }
        (s, s2)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(mc.n_streams)
        .build()
        .map_err(|e| domain(format!("cannot build worker pool: {e}")))?;
    let partials: Vec<(f64, f64)> = pool.install(|| (0..n_blocks).into_par_iter().map(block).collect());
    let (s, s2) = partials.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    Ok((s, s2, mc.n_samples))
}

/// Outage `P(γ_eq < γ_th)` with binomial standard error.
pub fn mc_outage(rf: &RfFading, fso: &FsoChannelParams, sys: &SystemConfig, mc: &McConfig) -> Result<Estimate> {
    let th = sys.gamma_th;
    let (s, _, n) = simulate(rf, fso, sys, mc, |g| if g < th { 1.0 } else { 0.0 })?;
    let p = s / n as f64;
    Ok(Estimate { value: p, std_error: (p * (1.0 - p) / n as f64).sqrt(), n })
}

/// BER as the sample mean of `Γ(p, qγ_eq)/(2Γ(p))`.
pub fn mc_ber(
    rf: &RfFading,
    fso: &FsoChannelParams,
    sys: &SystemConfig,
    modulation: &ModulationScheme,
    mc: &McConfig,
) -> Result<Estimate> {
    let (p, q) = (modulation.p, modulation.q);
    let (s, s2, n) = simulate(rf, fso, sys, mc, |g| 0.5 * gamma_upper_reg(p, q * g).unwrap_or(f64::NAN))?;
    let nf = n as f64;
    let mean = s / nf;
    let var = ((s2 - nf * mean * mean) / (nf - 1.0)).max(0.0);
    Ok(Estimate { value: mean, std_error: (var / nf).sqrt(), n })
}

/// `n` draws from a sampler on the block-stream layout used by the estimators.
pub fn draw(seed: u64, n: u64, sampler: impl Fn(&mut ChaCha8Rng) -> f64 + Sync) -> Vec<f64> {
    let n_blocks = n.div_ceil(BLOCK_SIZE);
    (0..n_blocks)
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut rng = stream(seed, k);
            let len = BLOCK_SIZE.min(n - k * BLOCK_SIZE);
            (0..len).map(|_| sampler(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}
