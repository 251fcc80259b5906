//! Bracketed root finding for monotone functions.

use crate::{Error, Result};

const MAX_ITER: usize = 300;

/// Root of a strictly monotone `f` on `[lo, hi]`.
///
/// `f` returns the pair `(f(x), f'(x))`. Newton steps are taken while they
/// stay inside the current bracket; anything else falls back to bisection,
/// so convergence is guaranteed once the bracket holds a sign change.
/// Terminates when the bracket (or the last Newton step) is below `tol`.
pub fn find_root_monotone<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::Domain {
            what: "root bracket",
            value: hi - lo,
        });
    }
    let (f_lo, _) = f(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let (f_hi, _) = f(hi);
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let lo_negative = f_lo < 0.0;
    let (mut a, mut b) = (lo, hi);
    let mut x = 0.5 * (a + b);
    for _ in 0..MAX_ITER {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx < 0.0) == lo_negative {
            a = x;
        } else {
            b = x;
        }
        if (b - a).abs() <= tol {
            return Ok(0.5 * (a + b));
        }
        let newton = x - fx / dfx;
        let inside = newton.is_finite() && newton > a.min(b) && newton < a.max(b);
        let next = if inside { newton } else { 0.5 * (a + b) };
        if inside && (next - x).abs() <= 0.25 * tol {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NonConvergence {
        what: "monotone root finder",
        iterations: MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear() {
        let r = find_root_monotone(|x| (x - 1.0, 1.0), 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
    }

    #[test]
    fn decreasing_function() {
        let r = find_root_monotone(|x| (2.0 - x * x * x, -3.0 * x * x), 0.0, 3.0, 1e-13).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn bad_derivative_still_converges() {
        // a useless derivative forces the bisection fallback
        let r = find_root_monotone(|x| (x.exp() - 5.0, 1e-30), -3.0, 4.0, 1e-12).unwrap();
        assert!((r - 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn no_sign_change() {
        let e = find_root_monotone(|x| (x + 10.0, 1.0), 0.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(e, Error::NoSignChange { .. }));
    }

    #[test]
    fn endpoint_root() {
        assert_eq!(
            find_root_monotone(|x| (x, 1.0), 0.0, 1.0, 1e-12).unwrap(),
            0.0
        );
    }
}
