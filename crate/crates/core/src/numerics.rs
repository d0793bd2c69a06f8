//! Overflow-safe hyperbolic helpers and bracketed scalar solvers.

use crate::error::{Error, Result};
use std::f64::consts::LN_2;

/// `ln cosh x`, finite for every finite `x`.
#[inline]
pub fn logcosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// `ln sinh x` for `x > 0`.
#[inline]
pub fn lnsinh(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    x + (-(-2.0 * x).exp_m1()).ln() - LN_2
}

/// `ln(cosh y - 1 + a)` for `y >= 0`, `a >= 0`, not both zero.
///
/// Writing `cosh y - 1 = 2 sinh^2(y/2)` keeps full relative accuracy when
/// `y` and `a` are both small.
pub fn ln_cosh_shift(y: f64, a: f64) -> f64 {
    let y = y.abs();
    if y < 30.0 {
        let sh = (0.5 * y).sinh();
        (2.0 * sh * sh + a).ln()
    } else {
        // cosh y - 1 + a = e^y ((1 + e^{-2y})/2 + (a - 1) e^{-y})
        let e = (-y).exp();
        y + (0.5 * (1.0 + e * e) + (a - 1.0) * e).ln()
    }
}

/// `1 - cos(theta)` without cancellation.
#[inline]
pub fn one_minus_cos(theta: f64) -> f64 {
    let h = (0.5 * theta).sin();
    2.0 * h * h
}

/// `1 + cos(theta)` without cancellation.
#[inline]
pub fn one_plus_cos(theta: f64) -> f64 {
    let h = (0.5 * theta).cos();
    2.0 * h * h
}

/// `sinh(a y) / sinh(b y)` for `b > 0`, `y >= 0`; the `y = 0` value is `a / b`.
pub fn sinh_ratio(a: f64, b: f64, y: f64) -> f64 {
    debug_assert!(b > 0.0);
    if y == 0.0 {
        return a / b;
    }
    if a == 0.0 {
        return 0.0;
    }
    let aa = a.abs();
    let num = -(-2.0 * aa * y).exp_m1();
    let den = -(-2.0 * b * y).exp_m1();
    a.signum() * ((aa - b) * y).exp() * num / den
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Stops when the bracket is below `rel_tol * max(1, |x|)` or `f` hits zero.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return Err(Error::Bracket(format!(
            "no sign change on [{lo}, {hi}]: f = {flo}, {fhi}"
        )));
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= rel_tol * mid.abs().max(1e-300) || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(x, f(x))`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, abs_tol: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > abs_tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    let (fl, fh) = (f(lo), f(hi));
    if fl > fx && fl >= fh {
        (lo, fl)
    } else if fh > fx {
        (hi, fh)
    } else {
        (x, fx)
    }
}

/// Evenly spaced nodes on `[lo, hi]`, optionally shifted to cell midpoints.
pub fn linspace(lo: f64, hi: f64, n: usize, half_cell: bool) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    if half_cell {
        let h = (hi - lo) / n as f64;
        (0..n).map(|i| lo + (i as f64 + 0.5) * h).collect()
    } else {
        let h = (hi - lo) / (n - 1) as f64;
        (0..n).map(|i| if i + 1 == n { hi } else { lo + i as f64 * h }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logcosh_matches_direct_and_survives_overflow() {
        for &x in &[0.0, 1e-8, 0.3, -2.0, 10.0] {
            assert!((logcosh(x) - f64::cosh(x).ln()).abs() < 1e-14);
        }
        assert!((logcosh(1000.0) - (1000.0 - LN_2)).abs() < 1e-12);
    }

    #[test]
    fn lnsinh_small_and_large() {
        assert!((lnsinh(1e-6) - (1e-6f64).sinh().ln()).abs() < 1e-12);
        assert!((lnsinh(800.0) - (800.0 - LN_2)).abs() < 1e-12);
    }

    #[test]
    fn shift_is_accurate_near_zero() {
        let y = 1e-7;
        let a = one_minus_cos(std::f64::consts::PI / 2.0);
        let exact = (2.0 * (0.5 * y as f64).sinh().powi(2) + a).ln();
        assert_eq!(ln_cosh_shift(y, a), exact);
        assert!((ln_cosh_shift(40.0, 1.0) - (40.0f64).cosh().ln()).abs() < 1e-12);
        assert!((ln_cosh_shift(29.9, 0.5) - ln_cosh_shift(30.1, 0.5) + 0.2).abs() < 1e-6);
    }

    #[test]
    fn sinh_ratio_cases() {
        assert_eq!(sinh_ratio(1.0, 2.0, 0.0), 0.5);
        let y = 0.7;
        assert!((sinh_ratio(1.5, 2.0, y) - (1.5 * y).sinh() / (2.0 * y).sinh()).abs() < 1e-15);
        assert!((sinh_ratio(-0.5, 2.0, y) - (-0.5 * y).sinh() / (2.0 * y).sinh()).abs() < 1e-15);
        assert!(sinh_ratio(3.0, 4.0, 2000.0).is_finite());
    }

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
        assert!(bisect(|x| x * x + 1.0, 0.0, 2.0, 1e-12).is_err());
    }

    #[test]
    fn golden_finds_peak() {
        let (x, v) = golden_max(|x| -(x - 0.3).powi(2), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8 && v.abs() < 1e-15);
        let (x, _) = golden_max(|x| -x, 0.0, 1.0, 1e-10);
        assert_eq!(x, 0.0);
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.0, 1.0, 5, false);
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let w = linspace(0.0, 1.0, 4, true);
        assert_eq!(w, vec![0.125, 0.375, 0.625, 0.875]);
    }
}
