//! The curve `φ`, the implicit minimizer `y_p(t)` and the descent inequality.

use super::hyperbolic::{ln_f, threshold_y};
use super::{interior, scaled_slope, LemmaCheckResult, FD_TOL, LEMMA_TOL, SWEEP_Y_MAX};
use crate::constants::{critical_order, ExponentPair, EPS_CRIT, P2_BAND};
use crate::error::{domain, Error, Result};
use crate::minorant::{Branch, Master};
use crate::numerics::bisect;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Largest accepted `|φ(y_p) − cos t|`.
pub const CURVE_RESIDUAL: f64 = 1e-10;

/// `φ` for one exponent pair. On `p > 2` it is
/// `cosh y − (f/C)^{2/(p−2)}`, on `1 < p < 2` it is `(f/C)^{2/(p−2)} − cosh y`,
/// where `C` is the master-function coefficient of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiCurve {
    pub master: Master,
    pub y_tilde: f64,
    ln_c: f64,
}

impl PhiCurve {
    pub fn new(p: f64, s: f64) -> Result<Self> {
        if (p - 2.0).abs() <= P2_BAND {
            return domain(format!("φ degenerates at p = 2 (got p = {p})"));
        }
        let pair = ExponentPair::new(p, s)?;
        let branch = if p < 2.0 {
            Branch::CriticalLt2
        } else if pair.at_most_critical() {
            Branch::CriticalGe2
        } else {
            Branch::SupercriticalGe2
        };
        let master = Master::new(branch, pair)?;
        Ok(Self { master, y_tilde: master.y_tilde, ln_c: master.c.ln() })
    }

    pub fn p(&self) -> f64 {
        self.master.pair.p
    }

    pub fn s(&self) -> f64 {
        self.master.pair.s
    }

    /// `φ(y)`; `y = 0` gives the limit `φ(0+)`.
    pub fn eval(&self, y: f64) -> f64 {
        let (p, s) = (self.p(), self.s());
        let x = ((2.0 / (p - 2.0)) * (ln_f(y, p, s) - self.ln_c)).exp();
        if p > 2.0 {
            y.cosh() - x
        } else {
            x - y.cosh()
        }
    }
}

pub fn phi_curve(y: f64, p: f64, s: f64) -> Result<f64> {
    if !(p > 2.0) {
        return domain(format!("φ is used for p > 2 here, got {p}"));
    }
    if !(y >= 0.0) {
        return domain("φ needs y >= 0");
    }
    Ok(PhiCurve::new(p, s)?.eval(y))
}

/// Interval on which `φ` is asserted increasing.
fn monotone_range(p: f64) -> (f64, f64) {
    if p > 4.0 {
        (0.0, threshold_y(p))
    } else {
        (0.0, SWEEP_Y_MAX)
    }
}

pub fn check_phi_monotone(p: f64, s: f64, n_y: usize) -> Result<LemmaCheckResult> {
    if !(p > 2.0) {
        return domain(format!("lemma 6 needs p > 2, got {p}"));
    }
    let curve = PhiCurve::new(p, s)?;
    let f = |y: f64| curve.eval(y);
    let (lo, hi) = monotone_range(p);
    let samples = interior(lo + 2.0 * super::FD_STEP, hi, n_y).map(|y| (vec![y], scaled_slope(&f, y)));
    Ok(LemmaCheckResult::from_samples(
        "lemma6-phi-monotone",
        format!("p={p}, s={s}, y in ({lo}, {hi}), n={n_y}"),
        FD_TOL,
        samples,
    ))
}

/// `y′`: the largest root of `φ(y) = 1` below `arccosh(1/cos π/p)` for
/// `p >= 4`; for `2 < p < 4` the single root of `φ = 1` past `ỹ`.
pub fn y_prime(p: f64, s: f64) -> Result<f64> {
    if !(p > 2.0) {
        return domain(format!("y' needs p > 2, got {p}"));
    }
    let curve = PhiCurve::new(p, s)?;
    let g = |y: f64| curve.eval(y) - 1.0;
    let lo = curve.y_tilde;
    if p >= 4.0 {
        let hi = threshold_y(p);
        let n = 4000;
        let h = (hi - lo) / n as f64;
        for k in (0..n).rev() {
            let (a, b) = (lo + h * k as f64, lo + h * (k + 1) as f64);
            if g(a).signum() != g(b).signum() {
                let y = bisect(g, a, b, 1e-15)?;
                return Ok(y);
            }
        }
        Err(Error::Bracket(format!("φ = 1 has no root below arccosh(1/cos(π/p)) at p = {p}, s = {s}")))
    } else {
        let mut hi = lo + 0.5;
        while g(hi) <= 0.0 {
            hi *= 2.0;
            if hi > SWEEP_Y_MAX {
                return Err(Error::Bracket(format!("φ stays below 1 on [0, {SWEEP_Y_MAX}] at p = {p}, s = {s}")));
            }
        }
        bisect(g, lo, hi, 1e-15)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImplicitCurveSample {
    pub t: f64,
    pub y_p: f64,
    /// `φ(y_p) − cos t`.
    pub residual: f64,
}

/// Solve `φ(y) = cos t` by bisection.
pub fn solve_y_p(t: f64, p: f64, s: f64) -> Result<ImplicitCurveSample> {
    solve_on(&PhiCurve::new(p, s)?, t, None)
}

fn solve_on(curve: &PhiCurve, t: f64, y_hi: Option<f64>) -> Result<ImplicitCurveSample> {
    let p = curve.p();
    let end = PI / p;
    if !(t >= 0.0 && t <= end) || (p > 2.0 && t == 0.0) {
        return Err(Error::Bracket(format!("t = {t} outside the curve's range (0, π/p] at p = {p}")));
    }
    let target = t.cos();
    let g = |y: f64| curve.eval(y) - target;
    let lo = curve.y_tilde;
    if t == end {
        return Ok(ImplicitCurveSample { t, y_p: lo, residual: g(lo) });
    }
    if g(lo) > 0.0 {
        return Err(Error::Bracket(format!(
            "φ({lo}) = {} already exceeds cos t = {target}; parameters outside the lemma",
            curve.eval(lo)
        )));
    }
    let hi = match y_hi {
        Some(h) => h,
        None if p >= 4.0 => y_prime(p, curve.s())?,
        None => {
            let mut hi = lo + 0.25;
            while g(hi) <= 0.0 {
                hi = lo + 2.0 * (hi - lo);
                if hi > SWEEP_Y_MAX {
                    return Err(Error::Bracket(format!("no y with φ(y) > cos t = {target} up to {SWEEP_Y_MAX}")));
                }
            }
            hi
        }
    };
    let y = bisect(g, lo, hi, 1e-15)?;
    let residual = g(y);
    if residual.abs() > CURVE_RESIDUAL {
        return Err(Error::NonConvergence(format!("residual {residual} at t = {t}")));
    }
    Ok(ImplicitCurveSample { t, y_p: y, residual })
}

/// Sample `y_p` on interior nodes of `(0, π/p)`, reusing one bracket.
pub fn sample_curve(p: f64, s: f64, n_t: usize) -> Result<Vec<ImplicitCurveSample>> {
    let curve = PhiCurve::new(p, s)?;
    let hi = if p >= 4.0 { Some(y_prime(p, s)?) } else { None };
    interior(0.0, PI / p, n_t).collect::<Vec<_>>().par_iter().map(|&t| solve_on(&curve, t, hi)).collect()
}

/// `D sin(tp/2)/sin t − C (cosh y_p(t) − cos t)^{p/2−1}`.
pub fn descent_margin(master: &Master, t: f64, y: f64) -> f64 {
    let p = master.pair.p;
    let lhs = master.d * (0.5 * t * p).sin() / t.sin();
    let ch = y.cosh() - t.cos();
    lhs - master.c * ch.powf(0.5 * p - 1.0)
}

/// Descent of `Φ` along the curve `(y_p(t), t)`, `t ∈ (0, π/p)`.
///
/// Both the pointwise margin and the increments of `Φ` along the curve are
/// normalized by `max(1, |·|)` of the compared quantities.
pub fn check_descent(p: f64, s: f64, n_t: usize) -> Result<LemmaCheckResult> {
    if !(p > 2.0) {
        return domain(format!("descent needs p > 2, got {p}"));
    }
    let star = critical_order(p)?;
    if s < star - EPS_CRIT {
        return Err(Error::ParameterMismatch(format!("descent needs s >= s*(p) = {star}, got {s}")));
    }
    let curve = PhiCurve::new(p, s)?;
    let m = curve.master;
    let pts = sample_curve(p, s, n_t)?;
    let phis: Vec<f64> = pts.iter().map(|c| m.phi(c.y_p, c.t)).collect();
    let mut samples = Vec::with_capacity(2 * pts.len());
    for (k, c) in pts.iter().enumerate() {
        let lhs = m.d * (0.5 * c.t * p).sin() / c.t.sin();
        samples.push((vec![c.t, c.y_p], descent_margin(&m, c.t, c.y_p) / lhs.abs().max(1.0)));
        if k + 1 < pts.len() {
            let inc = phis[k + 1] - phis[k];
            samples.push((vec![c.t, c.y_p], -inc / phis[k].abs().max(1.0)));
        }
    }
    Ok(LemmaCheckResult::from_samples(
        "descent",
        format!("p={p}, s={s}, t in (0, pi/p), n={n_t}"),
        LEMMA_TOL,
        samples,
    ))
}
