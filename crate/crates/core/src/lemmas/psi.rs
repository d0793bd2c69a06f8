//! The four-step argument for `1 < p <= 4/3` at the critical order.

use super::hyperbolic::ln_f;
use super::{interior, LemmaCheckResult, FD_STEP, FD_TOL, LEMMA_TOL};
pub use super::trig::c_p;
use crate::constants::critical_order;
use crate::error::{domain, Result};
use std::f64::consts::PI;

const P_MAX: f64 = 4.0 / 3.0 + 1e-12;

/// `ψ(y) = c_p − cosh y + (1 − c_p)(2f(y)/s)^{2/(p−2)}`; `ψ(0) = 0`.
pub fn psi(y: f64, p: f64, s: f64) -> f64 {
    let c = c_p(p);
    c - y.cosh() + (1.0 - c) * ((2.0 / (p - 2.0)) * (ln_f(y, p, s) - (0.5 * s).ln())).exp()
}

/// `c` in the localization radius `c (p − 1)`.
pub fn localization_factor(p: f64) -> f64 {
    if p <= 1.25 {
        PI
    } else {
        13.0 / 5.0
    }
}

/// `(2(1 − c_p)/(2 − p))(1/3 + s²/6 − ps/4) − 1`, the sign of `ψ'` near zero.
pub fn step2_margin(p: f64) -> f64 {
    let s = critical_order(p).unwrap_or(f64::NAN);
    (2.0 * (1.0 - c_p(p)) / (2.0 - p)) * (1.0 / 3.0 + s * s / 6.0 - p * s / 4.0) - 1.0
}

/// `(1 + e^{−y})^{p−1}(1 − e^{−y}) − (2cos(π/2p))^p ((1 + e^{−sy})/2)^{p/s}` at `y = c(p−1)`.
pub fn lemma9_margin(p: f64) -> f64 {
    let s = critical_order(p).unwrap_or(f64::NAN);
    let y = localization_factor(p) * (p - 1.0);
    let e = (-y).exp();
    (1.0 + e).powf(p - 1.0) * (-(-y).exp_m1())
        - (2.0 * (0.5 * PI / p).cos()).powf(p) * (0.5 * (1.0 + (-s * y).exp())).powf(p / s)
}

/// `(p/(p−2)) cos(π/p) − cosh(c(p−1))`.
pub fn endpoint_margin(p: f64) -> f64 {
    (p / (p - 2.0)) * (PI / p).cos() - (localization_factor(p) * (p - 1.0)).cosh()
}

/// Steps 1–4 as separate results: shape of `ψ'`, the sign of `ψ'(0)`, the
/// localization inequality, the endpoint inequality and `ψ >= 0`.
pub fn psi_suite(p: f64, n: usize) -> Result<Vec<LemmaCheckResult>> {
    if !(p > 1.0 && p <= P_MAX) {
        return domain(format!("the ψ argument needs 1 < p <= 4/3, got {p}"));
    }
    let s = critical_order(p)?;
    let y_end = localization_factor(p) * (p - 1.0);
    let f = |y: f64| psi(y, p, s);

    let mut prev = 0i8;
    let mut changes = 0i64;
    let mut wrong_way = false;
    let mut at = 0.0;
    for y in interior(2.0 * FD_STEP, y_end, n) {
        let d = (f(y + FD_STEP) - f(y - FD_STEP)) / (2.0 * FD_STEP);
        let sign = if d > FD_TOL { 1 } else if d < -FD_TOL { -1 } else { 0 };
        if sign != 0 {
            if prev != 0 && sign != prev {
                changes += 1;
                wrong_way |= sign > 0;
                at = y;
            }
            prev = sign;
        }
    }
    let shape_margin = if wrong_way { -1.0 } else { (1 - changes) as f64 };
    let shape = LemmaCheckResult::new(
        "psi-step1-shape",
        format!("p={p}, y in (0, {y_end}], n={n}, sign changes of psi'={changes}"),
        shape_margin,
        vec![at],
        0.0,
    );

    let step2 = LemmaCheckResult::new("psi-step2", format!("p={p}, s={s}"), step2_margin(p), vec![p], LEMMA_TOL);
    let l9 = LemmaCheckResult::new(
        "lemma9-localization",
        format!("p={p}, y={y_end}"),
        lemma9_margin(p),
        vec![y_end],
        LEMMA_TOL,
    );
    let end = LemmaCheckResult::new("psi-endpoint", format!("p={p}"), endpoint_margin(p), vec![p], LEMMA_TOL);
    let h = y_end / n as f64;
    let nonneg = LemmaCheckResult::from_samples(
        "psi-nonneg",
        format!("p={p}, y in [0, {y_end}], n={n}"),
        LEMMA_TOL,
        (0..=n).map(|k| {
            let y = h * k as f64;
            (vec![y], f(y))
        }),
    );
    Ok(vec![shape, step2, l9, end, nonneg])
}
