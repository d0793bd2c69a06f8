//! Trigonometric auxiliary inequalities.

use super::{interior, scaled_slope, LemmaCheckResult, FD_STEP, FD_TOL, LEMMA_TOL};
use crate::error::{domain, Result};
use std::f64::consts::PI;

/// `E_p = 1 / (sin(π/p) cos^{p/2−1}(π/p))`.
pub fn e_p(p: f64) -> f64 {
    1.0 / ((PI / p).sin() * (PI / p).cos().powf(0.5 * p - 1.0))
}

/// `sin(tp/2)/sin t − E_p cos^{p/2−1} t`.
pub fn sine_ratio_lower_margin(t: f64, p: f64) -> f64 {
    (0.5 * t * p).sin() / t.sin() - e_p(p) * t.cos().powf(0.5 * p - 1.0)
}

pub fn check_sine_ratio_lower(p: f64, n_t: usize) -> Result<LemmaCheckResult> {
    if !(p >= 2.0) {
        return domain(format!("lemma 3 needs p >= 2, got {p}"));
    }
    let end = PI / p;
    let h = end / n_t as f64;
    let samples = (1..=n_t).map(|k| {
        let t = if k == n_t { end } else { h * k as f64 };
        (vec![t], sine_ratio_lower_margin(t, p))
    });
    Ok(LemmaCheckResult::from_samples(
        "lemma3-sine-ratio-lower",
        format!("p={p}, t in (0, pi/p], n={n_t}"),
        LEMMA_TOL,
        samples,
    ))
}

/// Slope check of `sin(αt)/sin(βt)` on `(0, π/β)`.
pub fn check_sine_ratio_monotone(alpha: f64, beta: f64, n_t: usize) -> Result<LemmaCheckResult> {
    if !(alpha > 0.0 && alpha < beta) {
        return domain(format!("claim 1 needs 0 < alpha < beta, got {alpha}, {beta}"));
    }
    let f = |t: f64| (alpha * t).sin() / (beta * t).sin();
    let hi = PI / beta;
    let samples = interior(2.0 * FD_STEP, hi - 2.0 * FD_STEP, n_t).map(|t| (vec![t], scaled_slope(&f, t)));
    Ok(LemmaCheckResult::from_samples(
        "claim1-sine-ratio-monotone",
        format!("alpha={alpha}, beta={beta}, t in (0, pi/beta), n={n_t}"),
        FD_TOL,
        samples,
    ))
}

pub fn cosh_cos_margin(x: f64) -> f64 {
    1.0 - x.cosh() * x.cos()
}

pub fn check_cosh_cos(n_x: usize) -> Result<LemmaCheckResult> {
    let samples = (0..=n_x).map(|k| {
        let x = k as f64 / n_x as f64;
        (vec![x], cosh_cos_margin(x))
    });
    Ok(LemmaCheckResult::from_samples("coscosh", format!("x in [0, 1], n={n_x}"), LEMMA_TOL, samples))
}

/// `c_p = ((p/2) sin²(π/p) − 1) / cos(π/p)`.
pub fn c_p(p: f64) -> f64 {
    (0.5 * p * (PI / p).sin().powi(2) - 1.0) / (PI / p).cos()
}

/// `(1/sin(π/p)) ((c_p + cos t)/(c_p + cos(π/p)))^{p/2−1} − sin(tp/2)/sin t`.
pub fn sine_ratio_upper_margin(t: f64, p: f64) -> f64 {
    let c = c_p(p);
    let a = PI / p;
    ((c + t.cos()) / (c + a.cos())).powf(0.5 * p - 1.0) / a.sin() - (0.5 * t * p).sin() / t.sin()
}

pub fn check_sine_ratio_upper(p: f64, n_t: usize) -> Result<LemmaCheckResult> {
    if !(p > 1.0 && p < 2.0) {
        return domain(format!("lemma 7 needs 1 < p < 2, got {p}"));
    }
    let end = PI / p;
    let h = end / n_t as f64;
    let samples = (1..=n_t).map(|k| {
        let t = if k == n_t { end } else { h * k as f64 };
        (vec![t], sine_ratio_upper_margin(t, p))
    });
    Ok(LemmaCheckResult::from_samples(
        "lemma7-sine-ratio-upper",
        format!("p={p}, t in (0, pi/p], n={n_t}"),
        LEMMA_TOL,
        samples,
    ))
}

/// Slope check of `sin(tp/2) / (sin(t/2) cos^{p−1}(t/2))` on `[π/p, π)`.
pub fn check_claim2_monotone(p: f64, n_t: usize) -> Result<LemmaCheckResult> {
    if !(p > 1.0 && p < 2.0) {
        return domain(format!("claim 2 needs 1 < p < 2, got {p}"));
    }
    let f = |t: f64| (0.5 * t * p).sin() / ((0.5 * t).sin() * (0.5 * t).cos().powf(p - 1.0));
    let samples = interior(PI / p, PI - 2.0 * FD_STEP, n_t).map(|t| (vec![t], scaled_slope(&f, t)));
    Ok(LemmaCheckResult::from_samples(
        "claim2-monotone",
        format!("p={p}, t in [pi/p, pi), n={n_t}"),
        FD_TOL,
        samples,
    ))
}
