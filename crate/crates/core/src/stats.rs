//! Binomial confidence intervals and running moments.

use libm::sqrt;

/// Two-sided 97.5% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `trials` at quantile `z`.
/// Returns `(0, 1)` when there are no trials.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    // clamp the rounding noise at the 0/1 endpoints so the interval always
    // contains the point estimate
    ((center - half).clamp(0.0, phat), (center + half).clamp(phat, 1.0))
}

/// Welford accumulator for mean and sample standard deviation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> Option<f64> {
        (self.count > 0).then_some(self.mean)
    }

    /// Sample standard deviation (n - 1 denominator); 0 for a single value.
    pub fn sd(&self) -> Option<f64> {
        match self.count {
            0 => None,
            1 => Some(0.0),
            c => Some(sqrt(self.m2 / (c - 1) as f64)),
        }
    }
}
