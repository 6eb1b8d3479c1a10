//! Estimators and goodness-of-fit statistics used to compare Monte Carlo
//! output with closed forms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("sample {index} is {value}; all samples must be finite and > 0")]
    NonPositiveSample { index: usize, value: f64 },
    #[error("rate must be finite and > 0, got {0}")]
    InvalidRate(f64),
    #[error("successes {successes} out of range for {trials} trials")]
    InvalidCounts { successes: u64, trials: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n: usize,
}

/// Maximum-likelihood rate `n / Σx` of an exponential sample with a 95%
/// normal-approximation interval `rate·(1 ± 1.96/√n)`.
pub fn exp_rate_mle(samples: &[f64]) -> Result<RateEstimate, StatsError> {
    if samples.len() < 2 {
        return Err(StatsError::TooFewSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    if let Some((index, &value)) = samples
        .iter()
        .enumerate()
        .find(|(_, x)| !(x.is_finite() && **x > 0.0))
    {
        return Err(StatsError::NonPositiveSample { index, value });
    }
    let n = samples.len();
    let rate = n as f64 / samples.iter().sum::<f64>();
    let half = Z95 / (n as f64).sqrt();
    Ok(RateEstimate {
        rate,
        ci_low: rate * (1.0 - half).max(0.0),
        ci_high: rate * (1.0 + half),
        n,
    })
}

/// Kolmogorov–Smirnov distance between the empirical CDF of `samples` and
/// the exponential CDF with the given rate.
pub fn ks_exponential(samples: &[f64], rate: f64) -> Result<f64, StatsError> {
    if !(rate.is_finite() && rate > 0.0) {
        return Err(StatsError::InvalidRate(rate));
    }
    if samples.is_empty() {
        return Err(StatsError::TooFewSamples { needed: 1, got: 0 });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let d = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let cdf = -(-rate * x.max(0.0)).exp_m1();
            let above = (i + 1) as f64 / n - cdf;
            let below = cdf - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max);
    Ok(d)
}

/// Asymptotic KS critical value at α ≈ 0.01.
pub fn ks_critical_001(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Wilson score 95% interval for a binomial proportion.
pub fn proportion_ci(successes: u64, trials: u64) -> Result<Proportion, StatsError> {
    if trials == 0 || successes > trials {
        return Err(StatsError::InvalidCounts { successes, trials });
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // exact endpoints at the boundaries
    let ci_low = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let ci_high = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    Ok(Proportion {
        estimate: p,
        ci_low: ci_low.min(p),
        ci_high: ci_high.max(p),
    })
}

/// Mean with the standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub std_error: f64,
}

impl SampleSummary {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return SampleSummary {
                n,
                mean: f64::NAN,
                std_dev: f64::NAN,
                std_error: f64::NAN,
            };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = if n > 1 {
            values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        let std_dev = var.sqrt();
        SampleSummary {
            n,
            mean,
            std_dev,
            std_error: std_dev / (n as f64).sqrt(),
        }
    }

    /// 95% normal interval for the mean.
    pub fn ci95(&self) -> (f64, f64) {
        (
            self.mean - Z95 * self.std_error,
            self.mean + Z95 * self.std_error,
        )
    }
}

/// Standard error of a difference of independent estimates.
pub fn combined_se(a: f64, b: f64) -> f64 {
    a.hypot(b)
}
