//! Gamma, log-Gamma and reciprocal Gamma.
//!
//! Everything is built on one Lanczos approximation (g = 7, nine
//! coefficients) with the reflection formula for arguments left of 1/2.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(πx)`, exact zero at every integer.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // reduce to r in [-1, 1], sin(πx) = sin(πr)
    let r = x - 2.0 * (0.5 * x).round();
    if r == r.trunc() {
        return 0.0;
    }
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

fn lanczos_sum(z_minus_one: f64) -> f64 {
    let mut sum = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z_minus_one + k as f64);
    }
    sum
}

/// Γ(x) for real `x`.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Ok(f64::NAN);
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { x });
    }
    if x < 0.5 {
        let g = gamma(1.0 - x)?;
        return Ok(PI / (sin_pi(x) * g));
    }
    if x > 171.7 {
        return Ok(f64::INFINITY);
    }
    if x == x.floor() && x <= 23.0 {
        // factorials up to 22! are exact in f64
        return Ok((2..x as u32).fold(1.0, |acc, k| acc * f64::from(k)));
    }
    let zm1 = x - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    // split the power so t^(x - 1/2) cannot overflow before e^{-t} is applied
    let half = t.powf(0.5 * (x - 0.5));
    Ok((2.0 * PI).sqrt() * half * ((-t).exp() * half) * lanczos_sum(zm1))
}

/// `ln|Γ(x)|` together with the sign of Γ(x).
pub fn ln_gamma(x: f64) -> Result<(f64, f64)> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { x });
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let (lg, _) = ln_gamma(1.0 - x)?;
        return Ok((LN_PI - s.abs().ln() - lg, s.signum()));
    }
    let zm1 = x - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    Ok((
        LN_SQRT_2PI + (x - 0.5) * t.ln() - t + lanczos_sum(zm1).ln(),
        1.0,
    ))
}

/// `(sign, ln|1/Γ(x)|)` with `sign == 0` exactly at the poles of Γ.
///
/// Lets series coefficients with huge Gamma factors be combined in log space
/// while pole terms still vanish exactly.
pub fn ln_recip_gamma(x: f64) -> (f64, f64) {
    match ln_gamma(x) {
        Ok((lg, sign)) => (sign, -lg),
        Err(_) => (0.0, f64::NEG_INFINITY),
    }
}

/// 1/Γ(x), an entire function: exactly zero at 0, -1, -2, …
pub fn recip_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x < 0.5 {
        // 1/Γ(x) = sin(πx) Γ(1-x) / π
        let s = sin_pi(x);
        let y = 1.0 - x;
        if y < 171.0 {
            let g = gamma(y).unwrap_or(f64::INFINITY);
            return s * g / PI;
        }
        let (lg, _) = ln_gamma(y).unwrap_or((f64::INFINITY, 1.0));
        return s.signum() * (lg + s.abs().ln() - LN_PI).exp();
    }
    if x < 171.0 {
        return 1.0 / gamma(x).unwrap_or(f64::INFINITY);
    }
    let (lg, _) = ln_gamma(x).unwrap_or((f64::INFINITY, 1.0));
    (-lg).exp()
}

fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let mut sum = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += *c / (zm1 + k as f64);
    }
    let t = zm1 + (LANCZOS_G + 0.5);
    (z - 0.5) * t.ln() - t + sum.ln() + LN_SQRT_2PI
}

/// Principal branch of log Γ(z) (branch cut along the negative real axis,
/// values on the cut taken as the limit from above).
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        return Err(Error::Pole { x: z.re });
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_lanczos(z));
    }
    if z.im < 0.0 {
        return ln_gamma_complex(z.conj()).map(|w| w.conj());
    }
    // Im z >= 0: log Γ(z) = log π - S(z) - log Γ(1 - z), where
    // S(z) = -ln 2 + iπ/2 - iπz + log(1 - e^{2πiz}) is the branch of
    // log sin(πz) that is analytic on the closed upper half-plane and
    // vanishes at z = 1/2.
    let frac = z.re - z.re.round();
    let e = Complex64::new(0.0, 2.0 * PI * frac).exp() * (-2.0 * PI * z.im).exp();
    let i = Complex64::i();
    let log_sin = -core::f64::consts::LN_2 + i * (0.5 * PI) - i * PI * z + (1.0 - e).ln();
    Ok(LN_PI - log_sin - ln_gamma_lanczos(1.0 - z))
}

/// Γ(js + 1) through the Gauss multiplication theorem,
/// `(2π)^{-(j-1)/2} j^{js+1/2} ∏_{k=1}^{j} Γ(s + k/j)`.
pub fn gamma_multiplication(j: u32, s: f64) -> Result<f64> {
    if j < 2 {
        return Err(Error::Parameter {
            what: "multiplication order j",
            value: f64::from(j),
        });
    }
    let jf = f64::from(j);
    if is_nonpositive_integer(jf * s + 1.0) {
        return Err(Error::Pole { x: jf * s + 1.0 });
    }
    let mut ln = -0.5 * (jf - 1.0) * (2.0 * PI).ln() + (jf * s + 0.5) * jf.ln();
    let mut sign = 1.0;
    for k in 1..=j {
        let (lg, sg) = ln_gamma(s + f64::from(k) / jf)?;
        ln += lg;
        sign *= sg;
    }
    Ok(sign * ln.exp())
}
