//! Goodness-of-fit statistics for checking samplers against closed forms.

use crate::specfun::incgamma::gamma_upper_reg;

/// Kolmogorov–Smirnov distance between a sample and a continuous CDF.
/// Sorts `samples` in place.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Upper bound on the KS distance that evaluates `cdf` only at every
/// `stride`-th order statistic. Between two evaluated points the monotone
/// CDF is bracketed by its values there, so the bound exceeds the exact
/// distance by at most the CDF increment across one stride. Sorts `samples`
/// in place.
pub fn ks_statistic_strided(samples: &mut [f64], cdf: impl Fn(f64) -> f64, stride: usize) -> f64 {
    assert!(stride >= 1, "stride must be at least 1");
    samples.sort_by(f64::total_cmp);
    let len = samples.len();
    if len == 0 {
        return 0.0;
    }
    let n = len as f64;
    let mut knots: Vec<usize> = (0..len).step_by(stride).collect();
    if *knots.last().unwrap() != len - 1 {
        knots.push(len - 1);
    }
    let values: Vec<f64> = knots.iter().map(|&i| cdf(samples[i])).collect();
    let mut d: f64 = 0.0;
    for (w, pair) in knots.windows(2).enumerate() {
        let (f_lo, f_hi) = (values[w], values[w + 1]);
        // order statistics i in [pair[0], pair[1]]: F between f_lo and f_hi
        d = d.max(f_hi - pair[0] as f64 / n).max((pair[1] + 1) as f64 / n - f_lo);
    }
    if len == 1 {
        d = values[0].max(1.0 - values[0]);
    }
    d
}

/// Two-sample Kolmogorov–Smirnov distance. Sorts both inputs in place.
pub fn ks_two_sample(x: &mut [f64], y: &mut [f64]) -> f64 {
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Asymptotic 1% critical value `1.628/√n_eff` of the KS distance.
pub fn ks_critical_1pct(n_eff: f64) -> f64 {
    1.628 / n_eff.sqrt()
}

/// Pearson χ² of `samples` against bins `edges[k]..edges[k+1]` with
/// probabilities from `cdf`. Returns `(χ², degrees of freedom, p-value)`.
/// Mass outside the outer edges is pooled into the end bins.
pub fn chi_square(samples: &[f64], edges: &[f64], cdf: impl Fn(f64) -> f64) -> (f64, usize, f64) {
    let k = edges.len() - 1;
    let mut counts = vec![0u64; k];
    for &x in samples {
        let idx = edges.partition_point(|&e| e <= x).saturating_sub(1).min(k - 1);
        counts[idx] += 1;
    }
    let n = samples.len() as f64;
    let mut probs: Vec<f64> = edges.windows(2).map(|w| cdf(w[1]) - cdf(w[0])).collect();
    probs[0] += cdf(edges[0]);
    probs[k - 1] += 1.0 - cdf(edges[k]);
    let stat: f64 = counts
        .iter()
        .zip(&probs)
        .map(|(&c, &p)| {
            let e = n * p;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    let df = k - 1;
    let p_value = gamma_upper_reg(df as f64 / 2.0, stat / 2.0).unwrap_or(0.0);
    (stat, df, p_value)
}

/// Mean and standard error of the mean.
pub fn mean_and_se(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
