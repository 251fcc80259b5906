//! Small statistics helpers for the Monte Carlo checks.

use alloc::vec::Vec;

/// Streaming mean/variance (Welford) with an order-stable merge.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MeanAccumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl MeanAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise combination.
    pub fn merge(&mut self, other: &MeanAccumulator) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        self.m2 / (self.count - 1) as f64
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            return f64::INFINITY;
        }
        (self.variance() / self.count as f64).sqrt()
    }
}

impl core::iter::FromIterator<f64> for MeanAccumulator {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = MeanAccumulator::new();
        for x in iter {
            acc.push(x);
        }
        acc
    }
}

/// Sorts in place (NaNs last).
pub fn sort(values: &mut [f64]) {
    values.sort_unstable_by(f64::total_cmp);
}

/// One-sample Kolmogorov–Smirnov statistic of sorted data against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |acc: f64, (i, &x)| {
        let f = cdf(x);
        let above = (i as f64 + 1.0) / n - f;
        let below = f - i as f64 / n;
        acc.max(above).max(below)
    })
}

/// Empirical CDF of sorted data at `x` (right-continuous).
pub fn ecdf(sorted: &[f64], x: f64) -> f64 {
    let count = sorted.partition_point(|&v| v <= x);
    count as f64 / sorted.len() as f64
}

/// Dvoretzky–Kiefer–Wolfowitz band half-width for `n` draws at level `level`.
pub fn dkw_epsilon(n: usize, level: f64) -> f64 {
    ((2.0 / level).ln() / (2.0 * n as f64)).sqrt()
}

/// Median of sorted data.
pub fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Gaussian kernel density estimate of `samples` at each point of `grid`.
///
/// Samples are first binned on a mesh ten times finer than `bandwidth`;
/// the kernel is truncated at five bandwidths.
pub fn kernel_density(samples: &[f64], grid: &[f64], bandwidth: f64) -> Vec<f64> {
    if grid.is_empty() || samples.is_empty() {
        return Vec::new();
    }
    let lo = grid.iter().copied().fold(f64::INFINITY, f64::min) - 6.0 * bandwidth;
    let hi = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 6.0 * bandwidth;
    let width = 0.1 * bandwidth;
    let bins = ((hi - lo) / width).ceil() as usize + 1;
    let mut counts = alloc::vec![0u64; bins];
    for &x in samples {
        if x >= lo && x < hi {
            counts[((x - lo) / width) as usize] += 1;
        }
    }
    let n = samples.len() as f64;
    let norm = 1.0 / (n * bandwidth * (2.0 * core::f64::consts::PI).sqrt());
    grid.iter()
        .map(|&g| {
            let first = (((g - 5.0 * bandwidth) - lo) / width).floor().max(0.0) as usize;
            let last = ((((g + 5.0 * bandwidth) - lo) / width).ceil() as usize).min(bins - 1);
            let mut acc = 0.0;
            for (b, &c) in counts.iter().enumerate().take(last + 1).skip(first) {
                if c == 0 {
                    continue;
                }
                let center = lo + (b as f64 + 0.5) * width;
                let z = (g - center) / bandwidth;
                acc += c as f64 * (-0.5 * z * z).exp();
            }
            acc * norm
        })
        .collect()
}
