//! Densities of the positive stable law, of `X_α^{-α}` and of the Kanter
//! variable `a_α(U)`.
//!
//! The alternating series are summed in log space with reciprocal-Gamma
//! coefficients, so Gamma poles give exact zero terms. Where a series loses
//! too many digits to cancellation the value comes from an integral
//! representation instead.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::kanter::{
    kanter_a_inverse, ln_kanter_a_derivative_unchecked, ln_kanter_a_excess, ln_kanter_a_unchecked,
    StabilityIndex,
};
use crate::numerics::{integrate, ln_gamma, ln_recip_gamma, sin_pi, sum_series, SeriesPolicy};
use crate::{Error, Result};

/// Digits a series may lose to cancellation before the integral route is used.
const MAX_CANCELLATION_DIGITS: f64 = 4.0;

fn check_positive(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { what, value: x })
    }
}

fn ln_factorial(k: usize) -> f64 {
    ln_gamma(k as f64 + 1.0)
        .map(|(l, _)| l)
        .unwrap_or(f64::INFINITY)
}

fn signed_exp(sign: f64, ln_mag: f64) -> f64 {
    if sign == 0.0 {
        0.0
    } else {
        sign * ln_mag.exp()
    }
}

fn parity(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Breakpoints on [0, π] that resolve a peak of width `left` at 0 and of
/// width `right` at π.
fn breakpoints(left: f64, right: f64) -> Vec<f64> {
    let mut pts = alloc::vec![0.0, PI];
    for (w, from_left) in [(left, true), (right, false)] {
        let mut d = w;
        while d.is_finite() && d > 0.0 && d < 0.5 * PI {
            pts.push(if from_left { d } else { PI - d });
            d *= 4.0;
        }
    }
    pts.sort_unstable_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// `∫₀^π g(a_α(u)) e^{-(a_α(u) - a_α(0)) z} du`, with breakpoints placed
/// where the exponential cuts the integrand off.
fn edge_scaled_integral(alpha: f64, z: f64, g: impl Fn(f64) -> f64) -> Result<f64> {
    let edge = ln_kanter_a_unchecked(alpha, 0.0).exp();
    // (a - a0) z ≈ a0 z α u²/2 near 0, and a ≈ 1/z sets the scale near π
    let left = (2.0 / (alpha * edge * z)).sqrt();
    let right = if z < 1.0 {
        z.powf(1.0 - alpha)
    } else {
        f64::INFINITY
    };
    let pts = breakpoints(left, right);
    let mut total = 0.0;
    for w in pts.windows(2) {
        let r = integrate(
            |u| {
                let excess = edge * ln_kanter_a_excess(alpha, u).exp_m1();
                let d = excess * z;
                if d > 745.0 {
                    0.0
                } else {
                    g(edge + excess) * (-d).exp()
                }
            },
            w[0],
            w[1],
            1e-300,
            1e-12,
        )?;
        total += r.value;
    }
    Ok(total)
}

/// Density of `X_α` from the Kanter representation,
/// `(p/(πx)) ∫₀^π a_α(u) z e^{-a_α(u) z} du` with `p = α/(1-α)`, `z = x^{-p}`.
///
/// Accurate where the power series cancels, i.e. for small `x`.
pub fn stable_pdf_integral(alpha: StabilityIndex, x: f64) -> Result<f64> {
    check_positive("stable density argument", x)?;
    let a = alpha.value();
    let p = a / (1.0 - a);
    let ln_z = -p * x.ln();
    let z = ln_z.exp();
    if !z.is_finite() {
        return Ok(0.0);
    }
    let edge = alpha.support_edge();
    let integral = edge_scaled_integral(a, z, |ak| ak)?;
    if integral <= 0.0 {
        return Ok(0.0);
    }
    Ok((p.ln() - PI.ln() - x.ln() + ln_z - edge * z + integral.ln()).exp())
}

/// Distribution function of `X_α`, `(1/π) ∫₀^π e^{-a_α(u) x^{-α/(1-α)}} du`.
pub fn stable_cdf(alpha: StabilityIndex, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain {
            what: "stable distribution argument",
            value: x,
        });
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(1.0);
    }
    let a = alpha.value();
    let z = (-(a / (1.0 - a)) * x.ln()).exp();
    if !z.is_finite() {
        return Ok(0.0);
    }
    let edge = alpha.support_edge();
    let integral = edge_scaled_integral(a, z, |_| 1.0)?;
    if integral <= 0.0 {
        return Ok(0.0);
    }
    Ok((integral.ln() - edge * z - PI.ln()).exp().min(1.0))
}

/// Density of the positive stable law with Laplace transform `e^{-t^α}`.
///
/// Sums `-(1/(πx)) Σ_{k≥1} (-1)^k/k! sin(kπα) Γ(1+kα) x^{-kα}`. When more
/// than four digits cancel (small `x`) or the divergence guard trips, the
/// value is recomputed by [`stable_pdf_integral`].
pub fn stable_pdf(alpha: StabilityIndex, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    check_positive("stable density argument", x)?;
    let a = alpha.value();
    let ln_x = x.ln();
    let series = sum_series(policy, "stable density series", 1, |k| {
        let kf = k as f64;
        let s = sin_pi(kf * a);
        if s == 0.0 {
            return 0.0;
        }
        let ln_g = ln_gamma(1.0 + kf * a)
            .map(|(l, _)| l)
            .unwrap_or(f64::INFINITY);
        let ln_mag = ln_g - ln_factorial(k) - kf * a * ln_x + s.abs().ln();
        -parity(k) * s.signum() * ln_mag.exp()
    });
    match series {
        Ok(out) if out.value >= 0.0 && out.cancellation_digits() <= MAX_CANCELLATION_DIGITS => {
            Ok(out.value / (PI * x))
        }
        Ok(_) | Err(Error::Divergence { .. }) | Err(Error::NonConvergence { .. }) => {
            stable_pdf_integral(alpha, x)
        }
        Err(e) => Err(e),
    }
}

/// Density of `X_α^{-α}`,
/// `(1/(αx)) Σ_{k≥1} (-1)^k/k! x^k / Γ(-kα)`.
///
/// Falls back to the change of variables `f(x^{-1/α}) x^{-1/α-1}/α` of
/// [`stable_pdf`] when the series cancels (large `x`).
pub fn stable_neg_pow_pdf(alpha: StabilityIndex, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    check_positive("density argument", x)?;
    let a = alpha.value();
    let ln_x = x.ln();
    let series = sum_series(policy, "negative power density series", 1, |k| {
        let (sign, ln_rg) = ln_recip_gamma(-(k as f64) * a);
        signed_exp(parity(k) * sign, k as f64 * ln_x - ln_factorial(k) + ln_rg)
    });
    match series {
        Ok(out) if out.value >= 0.0 && out.cancellation_digits() <= MAX_CANCELLATION_DIGITS => {
            Ok(out.value / (a * x))
        }
        Ok(_) | Err(Error::Divergence { .. }) | Err(Error::NonConvergence { .. }) => {
            stable_neg_pow_pdf_transformed(alpha, x, policy)
        }
        Err(e) => Err(e),
    }
}

/// [`stable_pdf`] pushed through `x ↦ x^{-α}`.
pub fn stable_neg_pow_pdf_transformed(
    alpha: StabilityIndex,
    x: f64,
    policy: &SeriesPolicy,
) -> Result<f64> {
    check_positive("density argument", x)?;
    let a = alpha.value();
    let inv = -1.0 / a;
    let t = x.powf(inv);
    Ok(stable_pdf(alpha, t, policy)? * x.powf(inv - 1.0) / a)
}

/// How [`kanter_pdf_eval`] obtained its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum KanterPdfRoute {
    /// At or below the support edge; the density is 0.
    OutsideSupport,
    /// The reciprocal-Gamma series.
    Series,
    /// `1/(π a_α'(a_α^{-1}(y)))`, used next to the edge where the series
    /// converges too slowly.
    EdgeIdentity,
}

/// A value of `h_α` with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct KanterPdfValue {
    pub value: f64,
    pub route: KanterPdfRoute,
    /// Series terms used (0 off the series route).
    pub terms: usize,
    /// Geometric ratio `(a_α(0)/y)^{1-α}` of the series terms.
    pub convergence_ratio: f64,
}

/// [`kanter_pdf`] together with the route taken and the convergence ratio.
pub fn kanter_pdf_eval(
    alpha: StabilityIndex,
    y: f64,
    policy: &SeriesPolicy,
) -> Result<KanterPdfValue> {
    check_positive("Kanter density argument", y)?;
    let a = alpha.value();
    let b = 1.0 - a;
    let ln_y = y.ln();
    let ln_ratio = b * (alpha.ln_support_edge() - ln_y);
    let convergence_ratio = ln_ratio.exp();
    if ln_ratio >= 0.0 {
        return Ok(KanterPdfValue {
            value: 0.0,
            route: KanterPdfRoute::OutsideSupport,
            terms: 0,
            convergence_ratio,
        });
    }
    let identity = || -> Result<KanterPdfValue> {
        let theta = kanter_a_inverse(alpha, y)?;
        let d = ln_kanter_a_unchecked(a, theta).exp() * ln_kanter_a_derivative_unchecked(a, theta);
        Ok(KanterPdfValue {
            value: 1.0 / (PI * d),
            route: KanterPdfRoute::EdgeIdentity,
            terms: 0,
            convergence_ratio,
        })
    };
    // terms decay like ρ^k: skip the series when it cannot finish in budget
    let predicted = policy.rel_tol.ln() / ln_ratio;
    if predicted > 0.9 * policy.max_terms as f64 {
        return identity();
    }
    let series = sum_series(policy, "Kanter density series", 0, |k| {
        let kf = k as f64;
        let (s1, l1) = ln_recip_gamma(b - kf * a);
        let (s2, l2) = ln_recip_gamma(a - kf * b);
        signed_exp(
            parity(k) * s1 * s2,
            l1 + l2 - ln_factorial(k) - kf * b * ln_y,
        )
    });
    match series {
        Ok(out) => {
            let mut value = b * out.value * (-(2.0 - a) * ln_y).exp();
            if value < 0.0 && value.abs() < policy.abs_tol {
                value = 0.0;
            }
            Ok(KanterPdfValue {
                value,
                route: KanterPdfRoute::Series,
                terms: out.terms,
                convergence_ratio,
            })
        }
        Err(Error::NonConvergence { .. }) => identity(),
        Err(e) => Err(e),
    }
}

/// Density `h_α` of the Kanter variable `a_α(U)`, zero up to `a_α(0)`.
///
/// `h_α(y) = (1-α) Σ_{k≥0} (-1)^k/k! y^{-((k+1)(1-α)+1)} /
/// (Γ(1-α-kα) Γ(α-k(1-α)))`; see [`kanter_pdf_eval`] for the edge policy.
pub fn kanter_pdf(alpha: StabilityIndex, y: f64, policy: &SeriesPolicy) -> Result<f64> {
    kanter_pdf_eval(alpha, y, policy).map(|v| v.value)
}

/// Closed form `h_{1/2}(y) = 1/(2πy√(y-1/4))`; `+∞` at the edge `y = 1/4`.
pub fn kanter_pdf_half(y: f64) -> f64 {
    if y.is_nan() {
        return f64::NAN;
    }
    if y < 0.25 {
        return 0.0;
    }
    if y == 0.25 {
        return f64::INFINITY;
    }
    1.0 / (2.0 * PI * y * (y - 0.25).sqrt())
}

/// `P(a_α(U) ≤ y) = a_α^{-1}(y)/π`.
pub fn kanter_cdf(alpha: StabilityIndex, y: f64) -> f64 {
    if y.is_nan() {
        return f64::NAN;
    }
    if y <= alpha.support_edge() {
        return 0.0;
    }
    kanter_a_inverse(alpha, y).map(|t| t / PI).unwrap_or(0.0)
}

/// `E[e^{-sV_{α,r}}] = Γ(rs/α+1) / (Γ(s+1)Γ(rs+1))` for `r ≥ α/(1-α)`, `s > -α/r`.
///
/// At `r = α/(1-α)` this is the Mellin transform `E[a_α(U)^{-s}]`.
pub fn exp_v_mellin(alpha: StabilityIndex, r: f64, s: f64) -> Result<f64> {
    let a = alpha.value();
    let critical = a / (1.0 - a);
    if !(r >= critical * (1.0 - 1e-12)) || !r.is_finite() {
        return Err(Error::Parameter {
            what: "r (must be at least alpha/(1-alpha))",
            value: r,
        });
    }
    if !(s > -a / r) {
        return Err(Error::Domain {
            what: "Mellin variable s",
            value: s,
        });
    }
    let (l1, _) = ln_gamma(r * s / a + 1.0)?;
    let (l2, _) = ln_gamma(s + 1.0)?;
    let (l3, _) = ln_gamma(r * s + 1.0)?;
    Ok((l1 - l2 - l3).exp())
}
