//! Compensated summation of slowly converging series.

use crate::{Error, Result};

/// Truncation controls shared by every series in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_terms: 10_000,
        }
    }
}

impl SeriesPolicy {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::Parameter {
                what: "rel_tol",
                value: rel_tol,
            });
        }
        if max_terms == 0 {
            return Err(Error::Parameter {
                what: "max_terms",
                value: 0.0,
            });
        }
        if !(abs_tol >= 0.0) {
            return Err(Error::Parameter {
                what: "abs_tol",
                value: abs_tol,
            });
        }
        Ok(SeriesPolicy {
            rel_tol,
            abs_tol,
            max_terms,
        })
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl core::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOutcome {
    pub value: f64,
    /// Number of terms summed.
    pub terms: usize,
    /// Largest term magnitude seen; compared with `value` it measures the
    /// cancellation the sum went through.
    pub max_term: f64,
}

impl SeriesOutcome {
    /// Digits lost to cancellation, as `log10(max_term / |value|)`.
    pub fn cancellation_digits(&self) -> f64 {
        if self.value == 0.0 {
            return if self.max_term == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
        }
        (self.max_term / self.value.abs()).log10().max(0.0)
    }
}

const SMALL_RUN: usize = 3;
const GROWTH_RUN: usize = 50;

/// Sums `term(start), term(start + 1), …` under `policy`.
///
/// Stops once three consecutive terms satisfy
/// `|t| <= rel_tol·|partial| + abs_tol`. Exact zeros (Gamma-pole terms)
/// count as small but are skipped by the divergence guard, which fails
/// after 50 consecutive growing magnitudes.
pub fn sum_series<F: FnMut(usize) -> f64>(
    policy: &SeriesPolicy,
    what: &'static str,
    start: usize,
    mut term: F,
) -> Result<SeriesOutcome> {
    let mut sum = CompensatedSum::new();
    let mut small_run = 0;
    let mut growth_run = 0;
    let mut previous = f64::NAN;
    let mut max_term = 0.0f64;
    for i in 0..policy.max_terms {
        let t = term(start + i);
        if !t.is_finite() {
            return Err(Error::Divergence { what, terms: i + 1 });
        }
        sum.add(t);
        let mag = t.abs();
        max_term = max_term.max(mag);
        if mag <= policy.rel_tol * sum.value().abs() + policy.abs_tol {
            small_run += 1;
            if small_run >= SMALL_RUN {
                return Ok(SeriesOutcome {
                    value: sum.value(),
                    terms: i + 1,
                    max_term,
                });
            }
        } else {
            small_run = 0;
        }
        if t != 0.0 {
            if mag > previous {
                growth_run += 1;
                if growth_run >= GROWTH_RUN {
                    return Err(Error::Divergence { what, terms: i + 1 });
                }
            } else {
                growth_run = 0;
            }
            previous = mag;
        }
    }
    Err(Error::NonConvergence {
        what,
        iterations: policy.max_terms,
    })
}
