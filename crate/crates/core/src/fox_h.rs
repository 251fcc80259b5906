//! The Fox H-function pieces used here.
//!
//! `H^{m,n}_{p,q}[z] = (1/2πi) ∫ Θ(s) z^{-s} ds` with
//! `Θ(s) = ∏_{j≤m} Γ(b_j + B_j s) ∏_{i≤n} Γ(1 - a_i - A_i s)
//!       / (∏_{j>m} Γ(1 - b_j - B_j s) ∏_{i>n} Γ(a_i + A_i s))`.
//!
//! Two evaluators are provided: the residue series over the left poles of
//! `Γ(b_1 + B_1 s)` for `m = 1, n = 0`, and trapezoidal quadrature along a
//! vertical line `Re s = γ`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::kanter::StabilityIndex;
use crate::numerics::{
    ln_gamma, ln_gamma_complex, ln_recip_gamma, sum_series, CompensatedSum, SeriesPolicy,
};
use crate::{Error, Result};

/// `|μ|` below this counts as `μ = 0`.
pub const MU_ZERO_TOL: f64 = 1e-12;

/// Parameter block `(m, n, (a_i, A_i)_{i≤p}, (b_j, B_j)_{j≤q})`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HParams {
    m: usize,
    n: usize,
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
}

impl HParams {
    pub fn new(m: usize, n: usize, upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self> {
        if m < 1 || m > lower.len() {
            return Err(Error::Parameter {
                what: "m (need 1 <= m <= q)",
                value: m as f64,
            });
        }
        if n > upper.len() {
            return Err(Error::Parameter {
                what: "n (need n <= p)",
                value: n as f64,
            });
        }
        for &(c, w) in upper.iter().chain(&lower) {
            if !c.is_finite() {
                return Err(Error::Parameter {
                    what: "H-function shift",
                    value: c,
                });
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::Parameter {
                    what: "H-function scale (must be positive)",
                    value: w,
                });
            }
        }
        Ok(HParams { m, n, upper, lower })
    }

    /// `h_α(y) = (2(1-α)/y) H[y^{-2(1-α)}]` with these parameters.
    pub fn kanter_density(alpha: StabilityIndex) -> Self {
        let a = alpha.value();
        HParams {
            m: 1,
            n: 0,
            upper: alloc::vec![(1.0, 2.0 * a), (1.0, 2.0 * (1.0 - a))],
            lower: alloc::vec![(1.0, 2.0)],
        }
    }

    /// `h_α(y) = (1/y) H[1/y]` with these parameters.
    pub fn kanter_density_unscaled(alpha: StabilityIndex) -> Self {
        let a = alpha.value();
        HParams {
            m: 1,
            n: 0,
            upper: alloc::vec![(1.0, a / (1.0 - a)), (1.0, 1.0)],
            lower: alloc::vec![(1.0, 1.0 / (1.0 - a))],
        }
    }

    /// The function whose derivative gives `h_α`:
    /// `h_α(y) = (2(1-α)/y) d/dy {y H[y^{-2(1-α)}]}`.
    pub fn kanter_density_integrated(alpha: StabilityIndex) -> Self {
        let a = alpha.value();
        HParams {
            m: 1,
            n: 0,
            upper: alloc::vec![(1.0, 2.0 * a), (2.0, 2.0 * (1.0 - a))],
            lower: alloc::vec![(1.0, 2.0)],
        }
    }

    /// Density of `X_α^{-α}` is `(2/(αx)) H[x²]` with these parameters.
    pub fn stable_neg_pow(alpha: StabilityIndex) -> Self {
        HParams {
            m: 1,
            n: 0,
            upper: alloc::vec![(0.0, 2.0 * alpha.value())],
            lower: alloc::vec![(0.0, 2.0)],
        }
    }

    /// Density of `e^{V_{α,r}}` is `(1/y) H[1/y]` with these parameters.
    pub fn exp_v(alpha: StabilityIndex, r: f64) -> Self {
        HParams {
            m: 1,
            n: 0,
            upper: alloc::vec![(1.0, 1.0), (1.0, r)],
            lower: alloc::vec![(1.0, r / alpha.value())],
        }
    }

    /// `a_{1-α}^{-1}(x)/π = 2 H[x^{-2α}]` with these parameters.
    pub fn free_inverse(alpha: StabilityIndex) -> Self {
        let a = alpha.value();
        HParams {
            m: 1,
            n: 0,
            upper: alloc::vec![(1.0, 2.0 * a), (1.0, 2.0 * (1.0 - a))],
            lower: alloc::vec![(0.0, 2.0)],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    pub fn upper(&self) -> &[(f64, f64)] {
        &self.upper
    }

    pub fn lower(&self) -> &[(f64, f64)] {
        &self.lower
    }

    /// `μ = Σ B_j - Σ A_i`.
    pub fn mu(&self) -> f64 {
        self.lower.iter().map(|l| l.1).sum::<f64>() - self.upper.iter().map(|u| u.1).sum::<f64>()
    }

    /// `β = ∏ A_i^{-A_i} ∏ B_j^{B_j}`.
    pub fn beta(&self) -> f64 {
        self.ln_beta().exp()
    }

    fn ln_beta(&self) -> f64 {
        self.lower.iter().map(|&(_, b)| b * b.ln()).sum::<f64>()
            - self.upper.iter().map(|&(_, a)| a * a.ln()).sum::<f64>()
    }

    /// `Ω = Σ_{i≤n} A_i + Σ_{j≤m} B_j - Σ_{i>n} A_i - Σ_{j>m} B_j`.
    pub fn omega(&self) -> f64 {
        let signed = |v: &[(f64, f64)], k: usize| -> f64 {
            v.iter()
                .enumerate()
                .map(|(i, &(_, w))| if i < k { w } else { -w })
                .sum()
        };
        signed(&self.upper, self.n) + signed(&self.lower, self.m)
    }

    /// `δ = Σ b_j - Σ a_i + (p - q)/2`.
    pub fn delta(&self) -> f64 {
        self.lower.iter().map(|l| l.0).sum::<f64>() - self.upper.iter().map(|u| u.0).sum::<f64>()
            + 0.5 * (self.p() as f64 - self.q() as f64)
    }

    /// `ln Θ(s)` (principal branches of each log-Gamma).
    pub fn ln_theta(&self, s: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &(b, bw)) in self.lower.iter().enumerate() {
            if j < self.m {
                acc += ln_gamma_complex(b + bw * s)?;
            } else {
                acc -= ln_gamma_complex(1.0 - b - bw * s)?;
            }
        }
        for (i, &(a, aw)) in self.upper.iter().enumerate() {
            if i < self.n {
                acc += ln_gamma_complex(1.0 - a - aw * s)?;
            } else {
                acc -= ln_gamma_complex(a + aw * s)?;
            }
        }
        Ok(acc)
    }

    /// Distance from `Re s = γ` to the nearest pole of the left family
    /// (`Γ(b_j + B_j s)`, `j ≤ m`) and of the right family
    /// (`Γ(1 - a_i - A_i s)`, `i ≤ n`).
    fn pole_gaps(&self, gamma: f64) -> (f64, f64) {
        let left = self.lower[..self.m]
            .iter()
            .map(|&(b, bw)| gamma + b / bw)
            .fold(f64::INFINITY, f64::min);
        let right = self.upper[..self.n]
            .iter()
            .map(|&(a, aw)| (1.0 - a) / aw - gamma)
            .fold(f64::INFINITY, f64::min);
        (left, right)
    }
}

/// Existence regimes of the Mellin–Barnes integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Case {
    /// `q ≥ 1, μ > 0`: exists for all `z ≠ 0`.
    I,
    /// `p ≥ 1, μ = 0`: exists for `|z| > β` (loop around the right poles).
    II,
    /// `Ω > 0`: exists on `|arg z| < πΩ/2` along a vertical line.
    III,
    /// `q ≥ 1, μ = 0`: exists for `|z| < β` (loop around the left poles).
    IV,
    /// `μ = 0, δ < -1`: also defined on `|z| = β`.
    V,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
            Case::IV => "iv",
            Case::V => "v",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The functionals `μ, β, Ω, δ` and the cases they admit.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExistenceReport {
    pub mu: f64,
    pub beta: f64,
    pub omega: f64,
    pub delta: f64,
    pub cases: Vec<Case>,
}

impl ExistenceReport {
    pub fn admits(&self, case: Case) -> bool {
        self.cases.contains(&case)
    }

    /// True when `μ` is zero up to [`MU_ZERO_TOL`].
    pub fn balanced(&self) -> bool {
        self.mu.abs() <= MU_ZERO_TOL
    }
}

/// Classifies `params` into the existence cases.
pub fn existence(params: &HParams) -> ExistenceReport {
    let mu = params.mu();
    let omega = params.omega();
    let delta = params.delta();
    let zero = mu.abs() <= MU_ZERO_TOL;
    let mut cases = Vec::new();
    if params.q() >= 1 && mu > MU_ZERO_TOL {
        cases.push(Case::I);
    }
    if params.p() >= 1 && zero {
        cases.push(Case::II);
    }
    if omega > 0.0 {
        cases.push(Case::III);
    }
    if params.q() >= 1 && zero {
        cases.push(Case::IV);
    }
    if zero && delta < -1.0 {
        cases.push(Case::V);
    }
    ExistenceReport {
        mu,
        beta: params.beta(),
        omega,
        delta,
        cases,
    }
}

/// `H^{1,0}_{p,q}[z]` as the sum of residues at the poles
/// `s_k = -(b_1 + k)/B_1` of `Γ(b_1 + B_1 s)`:
/// `Σ_k (-1)^k/(k! B_1) ∏(remaining factors at s_k) z^{(b_1+k)/B_1}`.
///
/// Valid for all `z > 0` when `μ > 0`, for `z < β` when `μ = 0` (and at
/// `z = β` under case v). For `μ = 0, z > β` the loop around the right
/// poles encloses nothing and the value is 0.
pub fn h10_series(params: &HParams, z: f64, policy: &SeriesPolicy) -> Result<f64> {
    if params.m != 1 || params.n != 0 {
        return Err(Error::Unsupported("residue series needs m = 1 and n = 0"));
    }
    if !(z > 0.0) {
        return Err(Error::Domain {
            what: "H-function argument",
            value: z,
        });
    }
    let report = existence(params);
    let beta = report.beta;
    if report.balanced() {
        if z > beta {
            return if report.admits(Case::II) {
                Ok(0.0)
            } else {
                Err(Error::OutOfDomain { z, beta })
            };
        }
        if z == beta && !report.admits(Case::V) {
            return Err(Error::OutOfDomain { z, beta });
        }
    } else if !report.admits(Case::I) {
        return Err(Error::OutOfDomain { z, beta });
    }
    let (b1, bw1) = params.lower[0];
    let ln_z = z.ln();
    let ln_bw1 = bw1.ln();
    let out = sum_series(policy, "H-function residue series", 0, |k| {
        let kf = k as f64;
        let s = -(b1 + kf) / bw1;
        let mut sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut ln_mag = -ln_gamma(kf + 1.0).map(|g| g.0).unwrap_or(f64::INFINITY) - ln_bw1
            + (b1 + kf) / bw1 * ln_z;
        for &(b, bw) in &params.lower[1..] {
            let (sg, l) = ln_recip_gamma(1.0 - b - bw * s);
            sign *= sg;
            ln_mag += l;
        }
        for &(a, aw) in &params.upper {
            let (sg, l) = ln_recip_gamma(a + aw * s);
            sign *= sg;
            ln_mag += l;
        }
        if sign == 0.0 {
            0.0
        } else {
            sign * ln_mag.exp()
        }
    })?;
    Ok(out.value)
}

/// Controls for the vertical-line quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadPolicy {
    /// Contour abscissa `γ` (`Re s = γ`).
    pub abscissa: f64,
    /// Truncation height `T`; chosen from the decay rate when `None`.
    pub truncation: Option<f64>,
    /// Lower bound on the number of nodes on `[0, T]`.
    pub min_nodes: usize,
    pub target_tol: f64,
}

impl Default for QuadPolicy {
    fn default() -> Self {
        QuadPolicy {
            abscissa: 0.0,
            truncation: None,
            min_nodes: 64,
            target_tol: 1e-12,
        }
    }
}

impl QuadPolicy {
    pub fn with_abscissa(self, abscissa: f64) -> Self {
        QuadPolicy { abscissa, ..self }
    }

    pub fn with_tolerance(self, target_tol: f64) -> Self {
        QuadPolicy { target_tol, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.min_nodes < 64 {
            return Err(Error::Parameter {
                what: "min_nodes (at least 64)",
                value: self.min_nodes as f64,
            });
        }
        if !(self.target_tol > 0.0) {
            return Err(Error::Parameter {
                what: "target_tol",
                value: self.target_tol,
            });
        }
        if let Some(t) = self.truncation {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Parameter {
                    what: "truncation height",
                    value: t,
                });
            }
        }
        if !self.abscissa.is_finite() {
            return Err(Error::Parameter {
                what: "abscissa",
                value: self.abscissa,
            });
        }
        Ok(())
    }
}

/// A vertical-line quadrature value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MellinBarnesValue {
    pub value: f64,
    /// `|Im|` of the unsymmetrised full-line sum; zero up to rounding.
    pub imaginary_residue: f64,
    pub step: f64,
    pub truncation: f64,
    pub nodes: usize,
    /// Estimate of the integrand mass beyond the truncation height.
    pub tail_bound: f64,
}

const MAX_TRUNCATION: f64 = 1e7;

/// `H[z] = (1/2π) ∫ Θ(γ+it) z^{-γ-it} dt` by the trapezoidal rule.
///
/// Needs `Ω > 0` (exponential decay of the integrand) or `Ω = 0` with
/// `z ≠ β` (algebraic decay, oscillating at rate `|ln(β/z)|`). `γ` must
/// separate the two pole families. The step comes from the width of the
/// pole-free strip around the line, the truncation height from a tail bound:
/// `|Θ(γ+iT)| z^{-γ}/((π/2)Ω)` in the first case, `2|Θ(γ+iT)| z^{-γ}/|ln(β/z)|`
/// in the second. The sum is taken over `t ≥ 0` (conjugate symmetry); the
/// negative half is also summed to report the imaginary residue.
pub fn mellin_barnes(params: &HParams, z: f64, policy: &QuadPolicy) -> Result<MellinBarnesValue> {
    policy.validate()?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain {
            what: "H-function argument",
            value: z,
        });
    }
    let gamma = policy.abscissa;
    let (gap_left, gap_right) = params.pole_gaps(gamma);
    if !(gap_left > 0.0 && gap_right > 0.0) {
        return Err(Error::Parameter {
            what: "abscissa (must separate the pole families)",
            value: gamma,
        });
    }
    let omega = params.omega();
    let ln_z = z.ln();
    let ln_beta = params.ln_beta();
    let oscillation = (ln_beta - ln_z).abs();
    let decay = 0.5 * PI * omega;
    if !(omega > 0.0) && !(omega.abs() <= MU_ZERO_TOL && oscillation > 1e-8) {
        return Err(Error::Unsupported(
            "vertical-line quadrature needs Omega > 0, or Omega = 0 away from |z| = beta",
        ));
    }
    let integrand = |t: f64| -> Result<Complex64> {
        let s = Complex64::new(gamma, t);
        Ok((params.ln_theta(s)? - s * ln_z).exp())
    };
    let ln_scale = -gamma * ln_z;
    let tail = |t: f64| -> Result<f64> {
        let modulus = (params.ln_theta(Complex64::new(gamma, t))?.re + ln_scale).exp();
        Ok(if omega > 0.0 {
            modulus / decay
        } else {
            2.0 * modulus / oscillation
        } / (2.0 * PI))
    };
    let tol = policy.target_tol;
    let (truncation, tail_bound) = match policy.truncation {
        Some(t) => {
            let b = tail(t)?;
            if b > tol {
                return Err(Error::TruncationInsufficient {
                    truncation: t,
                    tail_bound: b,
                });
            }
            (t, b)
        }
        None => {
            let mut t = 4.0;
            loop {
                let b = tail(t)?;
                if b < tol {
                    break (t, b);
                }
                if t > MAX_TRUNCATION {
                    return Err(Error::TruncationInsufficient {
                        truncation: t,
                        tail_bound: b,
                    });
                }
                t *= 1.25;
            }
        }
    };
    // the integrand is analytic for |Im t| < min(gaps); aliasing error is
    // about e^{-2πd/h} times its size on the edge of that strip
    let d = (0.75 * gap_left.min(gap_right)).min(1.0);
    let budget = (1.0 / tol).ln() + d * (ln_z.abs() + ln_beta.abs()) + (4.0 / d).ln().max(0.0);
    let mut step = 2.0 * PI * d / budget;
    let mut nodes = (truncation / step).ceil() as usize;
    if nodes < policy.min_nodes {
        nodes = policy.min_nodes;
        step = truncation / nodes as f64;
    }
    let mut real = CompensatedSum::new();
    let mut imag = CompensatedSum::new();
    let g0 = integrand(0.0)?;
    real.add(0.5 * g0.re);
    imag.add(g0.im);
    for k in 1..=nodes {
        let t = k as f64 * step;
        let gp = integrand(t)?;
        let gm = integrand(-t)?;
        real.add(gp.re);
        imag.add(gp.im);
        imag.add(gm.im);
    }
    Ok(MellinBarnesValue {
        value: step * real.value() / PI,
        imaginary_residue: (step * imag.value() / (2.0 * PI)).abs(),
        step,
        truncation,
        nodes,
        tail_bound,
    })
}

fn check_exp_v(alpha: StabilityIndex, r: f64) -> Result<()> {
    let a = alpha.value();
    if !(r > a / (1.0 - a)) || !r.is_finite() {
        return Err(Error::Parameter {
            what: "r (must exceed alpha/(1-alpha))",
            value: r,
        });
    }
    Ok(())
}

/// [`exp_v_pdf`] with the quadrature diagnostics.
pub fn exp_v_pdf_detailed(
    alpha: StabilityIndex,
    r: f64,
    y: f64,
    policy: &QuadPolicy,
) -> Result<MellinBarnesValue> {
    check_exp_v(alpha, r)?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain {
            what: "density argument",
            value: y,
        });
    }
    let mut v = mellin_barnes(&HParams::exp_v(alpha, r), 1.0 / y, policy)?;
    v.value /= y;
    v.imaginary_residue /= y;
    if v.value < 0.0 && v.value.abs() <= policy.target_tol / y {
        v.value = 0.0;
    }
    Ok(v)
}

/// Density of `e^{V_{α,r}}` for `r > α/(1-α)`,
/// `(1/2πy) ∫ Θ(γ+it) y^{γ+it} dt` with `Θ(s) = Γ(rs/α+1)/(Γ(s+1)Γ(rs+1))`.
pub fn exp_v_pdf(alpha: StabilityIndex, r: f64, y: f64, policy: &QuadPolicy) -> Result<f64> {
    exp_v_pdf_detailed(alpha, r, y, policy).map(|v| v.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{gamma, integrate};
    use crate::stable_series::{kanter_pdf, stable_neg_pow_pdf};

    fn idx(a: f64) -> StabilityIndex {
        StabilityIndex::new(a).unwrap()
    }

    fn rel(x: f64, y: f64) -> f64 {
        ((x - y) / y).abs()
    }

    #[test]
    fn parameter_validation() {
        assert!(HParams::new(0, 0, alloc::vec![], alloc::vec![(0.0, 1.0)]).is_err());
        assert!(HParams::new(2, 0, alloc::vec![], alloc::vec![(0.0, 1.0)]).is_err());
        assert!(HParams::new(1, 1, alloc::vec![], alloc::vec![(0.0, 1.0)]).is_err());
        assert!(HParams::new(1, 0, alloc::vec![(0.0, -1.0)], alloc::vec![(0.0, 1.0)]).is_err());
        assert!(HParams::new(1, 0, alloc::vec![(0.0, 1.0)], alloc::vec![(0.0, 1.0)]).is_ok());
    }

    #[test]
    fn integrated_block_classification() {
        let r = existence(&HParams::kanter_density_integrated(idx(0.5)));
        assert_eq!(r.mu, 0.0);
        assert_eq!(r.delta, -1.5);
        assert_eq!(r.cases, alloc::vec![Case::II, Case::IV, Case::V]);
    }

    #[test]
    fn density_block_functionals() {
        let r = existence(&HParams::kanter_density(idx(0.5)));
        assert_eq!(r.mu, 0.0);
        assert!(rel(r.beta, 4.0) < 1e-15);
        assert_eq!(r.delta, -0.5);
        assert!(!r.admits(Case::V));
        for i in 2..=8 {
            let a = idx(i as f64 / 10.0);
            let r = existence(&HParams::kanter_density(a));
            assert!(r.balanced());
            let edge = r.beta.powf(-1.0 / (2.0 * (1.0 - a.value())));
            assert!(rel(edge, a.support_edge()) < 1e-12);
        }
    }

    #[test]
    fn intermediate_block_is_case_i() {
        for &a in &[0.2, 0.5, 0.8] {
            let r = existence(&HParams::stable_neg_pow(idx(a)));
            assert!((r.mu - (2.0 - 2.0 * a)).abs() < 1e-15);
            assert!(r.admits(Case::I));
            assert!(!r.admits(Case::IV));
        }
    }

    #[test]
    fn exp_v_block_is_case_iii() {
        let r = existence(&HParams::exp_v(idx(0.5), 1.5));
        assert!((r.omega - 0.5).abs() < 1e-15);
        assert_eq!(r.cases, alloc::vec![Case::I, Case::III]);
    }

    #[test]
    fn series_reproduces_kanter_density() {
        let policy = SeriesPolicy::default();
        for &a in &[0.3, 0.5, 0.7] {
            let alpha = idx(a);
            for &y in &[0.9f64, 1.3, 4.0] {
                let z = y.powf(-2.0 * (1.0 - a));
                let h = 2.0 * (1.0 - a) / y
                    * h10_series(&HParams::kanter_density(alpha), z, &policy).unwrap();
                let u = h10_series(&HParams::kanter_density_unscaled(alpha), 1.0 / y, &policy)
                    .unwrap()
                    / y;
                let direct = kanter_pdf(alpha, y, &policy).unwrap();
                assert!(rel(h, direct) < 1e-10, "a={a} y={y}");
                assert!(rel(u, direct) < 1e-10, "a={a} y={y}");
            }
        }
        let z = 0.5f64.powf(-1.0);
        let h = 1.0 / 0.5 * h10_series(&HParams::kanter_density(idx(0.5)), z, &policy).unwrap();
        assert!(rel(h, 2.0 / PI) < 1e-12);
    }

    #[test]
    fn series_outside_support_and_domain() {
        let policy = SeriesPolicy::default();
        let p = HParams::kanter_density(idx(0.5));
        assert_eq!(h10_series(&p, 5.0, &policy).unwrap(), 0.0);
        // β itself is excluded without case v
        assert!(matches!(
            h10_series(&p, 4.0, &policy),
            Err(Error::OutOfDomain { .. })
        ));
        let neg = HParams::new(1, 0, alloc::vec![(0.0, 3.0)], alloc::vec![(0.0, 1.0)]).unwrap();
        assert!(matches!(
            h10_series(&neg, 0.5, &policy),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn series_intermediate_function() {
        let policy = SeriesPolicy::default();
        let h = h10_series(&HParams::stable_neg_pow(idx(0.5)), 1.0, &policy).unwrap();
        assert!(rel(h, 0.109_847_822_366_930_599_3) < 1e-12);
        let d = stable_neg_pow_pdf(idx(0.5), 1.0, &policy).unwrap();
        assert!(rel(h, 0.25 * d) < 1e-12);
        let h = h10_series(&HParams::stable_neg_pow(idx(0.3)), 0.7f64.powi(2), &policy).unwrap();
        let d = stable_neg_pow_pdf(idx(0.3), 0.7, &policy).unwrap();
        assert!(rel(2.0 / (0.3 * 0.7) * h, d) < 1e-10);
    }

    #[test]
    fn decay_rate_matches_gamma_asymptotics() {
        for &a in &[0.3, 0.5, 0.7] {
            let critical = a / (1.0 - a);
            for &factor in &[1.2, 2.0] {
                let r = factor * critical;
                let p = HParams::exp_v(idx(a), r);
                let (t1, t2) = (40.0, 80.0);
                let l1 = p.ln_theta(Complex64::new(0.0, t1)).unwrap().re;
                let l2 = p.ln_theta(Complex64::new(0.0, t2)).unwrap().re;
                let measured = (l1 - l2) / (t2 - t1);
                let predicted = 0.5 * PI * (r / a - r - 1.0);
                assert!(rel(measured, predicted) < 0.05, "a={a} r={r}");
            }
        }
    }

    #[test]
    fn critical_index_is_not_integrable() {
        // r = α/(1-α): Ω = 0 and |Θ| decays only like |t|^{-1/2}
        let p = HParams::exp_v(idx(0.5), 1.0);
        assert!(p.omega().abs() < 1e-15);
        let l1 = p.ln_theta(Complex64::new(0.0, 100.0)).unwrap().re;
        let l2 = p.ln_theta(Complex64::new(0.0, 10_000.0)).unwrap().re;
        assert!(((l1 - l2) / 100f64.ln() - 0.5).abs() < 1e-3);
    }

    #[test]
    fn exp_v_oracle_values() {
        let policy = QuadPolicy::default();
        let cases = [
            (0.5, 1.5, 1.0, 0.137_261_030_584_166_345_3),
            (0.5, 1.5, 0.5, 0.339_104_628_973_244_181_3),
            (0.3, 1.0, 2.0, 0.052_483_768_677_786_411_09),
        ];
        for &(a, r, y, v) in &cases {
            let d = exp_v_pdf_detailed(idx(a), r, y, &policy).unwrap();
            assert!(rel(d.value, v) < 1e-10, "a={a} r={r} y={y}: {}", d.value);
            assert!(d.imaginary_residue < 1e-10);
            assert!(d.nodes >= 64);
        }
    }

    #[test]
    fn exp_v_abscissa_does_not_matter() {
        let alpha = idx(0.5);
        let base = exp_v_pdf(alpha, 1.5, 0.8, &QuadPolicy::default()).unwrap();
        for &g in &[-0.2, 0.5, 1.5] {
            let v = exp_v_pdf(alpha, 1.5, 0.8, &QuadPolicy::default().with_abscissa(g)).unwrap();
            assert!(rel(v, base) < 1e-9, "gamma={g}");
        }
        // the abscissa must stay right of -α/r
        assert!(exp_v_pdf(alpha, 1.5, 0.8, &QuadPolicy::default().with_abscissa(-0.4)).is_err());
    }

    #[test]
    fn exp_v_normalisation_and_inverse_moment() {
        let alpha = idx(0.5);
        let policy = QuadPolicy::default().with_tolerance(1e-11);
        // y = e^u
        let moment = |s: f64| {
            integrate(
                |u| {
                    let y = u.exp();
                    y * y.powf(-s) * exp_v_pdf(alpha, 1.5, y, &policy).unwrap()
                },
                -8.0,
                60.0,
                1e-10,
                1e-10,
            )
            .unwrap()
            .value
        };
        assert!((moment(0.0) - 1.0).abs() < 1e-4);
        let exact = gamma(4.0).unwrap() / gamma(2.5).unwrap();
        assert!((moment(1.0) - exact).abs() < 1e-4);
    }

    #[test]
    fn exp_v_rejects_critical_r() {
        assert!(matches!(
            exp_v_pdf(idx(0.5), 1.0, 1.0, &QuadPolicy::default()),
            Err(Error::Parameter { .. })
        ));
    }

    #[test]
    fn fixed_truncation_too_short() {
        let policy = QuadPolicy {
            truncation: Some(2.0),
            ..QuadPolicy::default()
        };
        assert!(matches!(
            exp_v_pdf(idx(0.5), 1.5, 1.0, &policy),
            Err(Error::TruncationInsufficient { .. })
        ));
        assert!(QuadPolicy {
            min_nodes: 10,
            ..QuadPolicy::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn series_and_quadrature_agree_on_integrated_block() {
        // both representations of the μ = 0 function inside |z| < β
        let alpha = idx(0.5);
        let p = HParams::kanter_density_integrated(alpha);
        let policy = QuadPolicy::default()
            .with_abscissa(0.5)
            .with_tolerance(1e-8);
        for &y in &[0.5f64, 1.0, 3.0] {
            let z = y.powf(-2.0 * (1.0 - alpha.value()));
            let s = h10_series(&p, z, &SeriesPolicy::default()).unwrap();
            let q = mellin_barnes(&p, z, &policy).unwrap();
            assert!((s - q.value).abs() < 1e-6, "y={y}: {s} vs {}", q.value);
        }
    }
}
