//! The function `G`, its series coefficients and the hyperbolic estimates.

use super::implicit::{y_prime, PhiCurve};
use super::{LemmaCheckResult, LEMMA_TOL, SWEEP_Y_MAX};
use crate::constants::{critical_order, maximize_k, EPS_CRIT};
use crate::error::{domain, Error, Result};
use crate::numerics::{lnsinh, logcosh};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `ln f(y)`, `f = cosh^{p/s−1}(sy/2) sinh(sy/2) / sinh y`; `f(0) = s/2`.
pub fn ln_f(y: f64, p: f64, s: f64) -> f64 {
    if y == 0.0 {
        return (0.5 * s).ln();
    }
    (p / s - 1.0) * logcosh(0.5 * s * y) + lnsinh(0.5 * s * y) - lnsinh(y)
}

/// `G(y) = f(y) / cosh^{p/2−1} y`; `G(0) = s/2`.
pub fn g_function(y: f64, p: f64, s: f64) -> f64 {
    (ln_f(y, p, s) - (0.5 * p - 1.0) * logcosh(y)).exp()
}

/// `arccosh(1 / cos(π/p))`, the right end of several `p >= 4` sweeps.
pub fn threshold_y(p: f64) -> f64 {
    (1.0 / (PI / p).cos()).acosh()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoefficient {
    pub k: u32,
    /// `a_k`, infinite when it overflows.
    pub value: f64,
    pub sign: i8,
    /// `ln |a_k|` (`-inf` for zero).
    pub log_magnitude: f64,
    pub overflow: bool,
}

/// `a_k = (p/4)(s−2)^{2k+1} + (1−p/4)s^{2k+1} + (p/4 − s/2)2^{2k+1}`,
/// scaled by the largest base so every power stays below one.
pub fn series_coefficient_a(k: u32, p: f64, s: f64) -> Result<SeriesCoefficient> {
    if k == 0 {
        return domain("a_k needs k >= 1");
    }
    let n = 2 * k as i32 + 1;
    let m = (s - 2.0).abs().max(s).max(2.0);
    let b = 0.25 * p * ((s - 2.0) / m).powi(n) + (1.0 - 0.25 * p) * (s / m).powi(n) + (0.25 * p - 0.5 * s) * (2.0 / m).powi(n);
    let sign = if b > 0.0 {
        1
    } else if b < 0.0 {
        -1
    } else {
        0
    };
    let log_magnitude = n as f64 * m.ln() + b.abs().ln();
    let value = sign as f64 * log_magnitude.exp();
    Ok(SeriesCoefficient { k, value, sign, log_magnitude, overflow: sign != 0 && !value.is_finite() })
}

/// At most one sign change, from `+` to `−`, along `a_1, …, a_{k_max}`;
/// none at all for `2 <= p <= 4` at the critical order.
///
/// The margin is the number of sign changes still allowed (negative on failure).
pub fn check_sign_pattern(p: f64, s: f64, k_max: u32) -> Result<LemmaCheckResult> {
    if !(p > 1.0 && s >= 2.0) {
        return domain(format!("sign pattern needs p > 1, s >= 2, got p = {p}, s = {s}"));
    }
    let critical = (s - critical_order(p)?).abs() <= EPS_CRIT;
    let allowed: i64 = if critical && (2.0..=4.0).contains(&p) { 0 } else { 1 };
    let mut prev = 0i8;
    let mut changes = 0i64;
    let mut wrong_way = false;
    let mut first = 0u32;
    for k in 1..=k_max {
        let a = series_coefficient_a(k, p, s)?;
        if a.sign == 0 {
            continue;
        }
        if prev != 0 && a.sign != prev {
            changes += 1;
            if a.sign > 0 {
                wrong_way = true;
            }
            if first == 0 {
                first = k;
            }
        }
        if prev == 0 && a.sign < 0 && allowed == 0 {
            wrong_way = true;
        }
        prev = a.sign;
    }
    let margin = if wrong_way { -1.0 } else { (allowed - changes) as f64 };
    Ok(LemmaCheckResult::new(
        "lemma5-sign-pattern",
        format!("p={p}, s={s}, k in [1, {k_max}], sign changes={changes}"),
        margin,
        vec![first as f64],
        0.0,
    ))
}

/// `cosh y − (f(y)/C)^{2/(p−2)} − 1` on `[arccosh(1/cos π/p), SWEEP_Y_MAX]`.
pub fn check_hyperbolic_threshold(p: f64, s: f64, n_y: usize) -> Result<LemmaCheckResult> {
    if !(p >= 4.0) {
        return domain(format!("lemma 4 needs p >= 4, got {p}"));
    }
    let ln_c = maximize_k(p, s)?.c.ln();
    let lo = threshold_y(p);
    let h = (SWEEP_Y_MAX - lo) / (n_y - 1) as f64;
    let samples = (0..n_y).map(|k| {
        let y = lo + h * k as f64;
        let m = y.cosh() - ((2.0 / (p - 2.0)) * (ln_f(y, p, s) - ln_c)).exp() - 1.0;
        (vec![y], m / y.cosh())
    });
    Ok(LemmaCheckResult::from_samples(
        "lemma4-hyperbolic-threshold",
        format!("p={p}, s={s}, y in [arccosh(1/cos(pi/p)), {SWEEP_Y_MAX}], n={n_y}, margin/cosh y"),
        LEMMA_TOL,
        samples,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GMode {
    CriticalBound,
    SupercriticalUpper,
    SupercriticalLower,
}

impl GMode {
    pub fn id(self) -> &'static str {
        match self {
            GMode::CriticalBound => "G-critical-bound",
            GMode::SupercriticalUpper => "G-supercritical-upper",
            GMode::SupercriticalLower => "G-supercritical-lower",
        }
    }
}

pub fn check_g_bounds(p: f64, s: f64, mode: GMode, n: usize) -> Result<LemmaCheckResult> {
    if !(p >= 2.0) {
        return domain(format!("G bounds need p >= 2, got {p}"));
    }
    let star = critical_order(p)?;
    let (lo, hi, reference) = match mode {
        GMode::CriticalBound => {
            if (s - star).abs() > EPS_CRIT {
                return Err(Error::ParameterMismatch(format!("critical G bound needs s = s*(p) = {star}, got {s}")));
            }
            let hi = if p >= 4.0 { threshold_y(p) } else { SWEEP_Y_MAX };
            (0.0, hi, 0.5 * s)
        }
        GMode::SupercriticalUpper | GMode::SupercriticalLower => {
            if s <= star + EPS_CRIT {
                return Err(Error::ParameterMismatch(format!("{} needs s > s*(p) = {star}, got {s}", mode.id())));
            }
            let curve = PhiCurve::new(p, s)?;
            let yt = curve.y_tilde;
            let g0 = g_function(yt, p, s);
            if mode == GMode::SupercriticalUpper {
                (yt, y_prime(p, s)?, g0)
            } else {
                (0.0, yt, g0)
            }
        }
    };
    let h = (hi - lo) / (n - 1) as f64;
    let samples = (0..n).map(|k| {
        let y = if k + 1 == n { hi } else { lo + h * k as f64 };
        let g = g_function(y, p, s);
        let m = if mode == GMode::SupercriticalLower { g - reference } else { reference - g };
        (vec![y], m)
    });
    Ok(LemmaCheckResult::from_samples(
        mode.id(),
        format!("p={p}, s={s}, y in [{lo}, {hi}], n={n}"),
        LEMMA_TOL,
        samples,
    ))
}
