//! Named numerical checks of the auxiliary inequalities behind the sharp
//! constants. Every check returns a [`LemmaCheckResult`] whose `passed`
//! flag is derived from its minimum margin.

pub mod falsify;
pub mod hyperbolic;
pub mod implicit;
pub mod psi;
pub mod trig;

use crate::constants::{critical_order, EPS_CRIT, P2_BAND};
use crate::error::{domain, Error, Result};
use serde::{Deserialize, Serialize};

pub use falsify::{falsify_beyond_cutoff, falsify_lt2, falsify_supercritical, Falsification};
pub use hyperbolic::{
    check_g_bounds, check_hyperbolic_threshold, check_sign_pattern, g_function, series_coefficient_a, GMode,
    SeriesCoefficient,
};
pub use implicit::{check_descent, check_phi_monotone, phi_curve, solve_y_p, y_prime, ImplicitCurveSample, PhiCurve};
pub use psi::psi_suite;
pub use trig::{c_p, check_claim2_monotone, check_cosh_cos, check_sine_ratio_lower, check_sine_ratio_monotone, check_sine_ratio_upper};

/// Margin tolerance of inequality checks.
pub const LEMMA_TOL: f64 = 1e-9;
/// Step of the central differences used by monotonicity checks.
pub const FD_STEP: f64 = 1e-6;
/// Tolerance of derivative checks, relative to `max(1, |f|)`.
pub const FD_TOL: f64 = 1e-6;
/// Right end of `y` sweeps that have no natural endpoint.
pub const SWEEP_Y_MAX: f64 = 20.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheckResult {
    pub lemma_id: String,
    pub param_grid: String,
    pub min_margin: f64,
    pub argmin: Vec<f64>,
    pub passed: bool,
    pub tol: f64,
}

impl LemmaCheckResult {
    pub fn new(lemma_id: &str, param_grid: String, min_margin: f64, argmin: Vec<f64>, tol: f64) -> Self {
        Self { lemma_id: lemma_id.into(), param_grid, passed: min_margin >= -tol, min_margin, argmin, tol }
    }

    /// Minimum over `(point, margin)` samples; a NaN margin counts as `-inf`.
    pub fn from_samples<I>(lemma_id: &str, param_grid: String, tol: f64, samples: I) -> Self
    where
        I: IntoIterator<Item = (Vec<f64>, f64)>,
    {
        let mut best = (f64::INFINITY, Vec::new());
        for (x, m) in samples {
            let m = if m.is_nan() { f64::NEG_INFINITY } else { m };
            if m < best.0 {
                best = (m, x);
            }
        }
        Self::new(lemma_id, param_grid, best.0, best.1, tol)
    }

    /// Combine sub-checks under one id: the worst normalized margin wins.
    pub fn aggregate(lemma_id: &str, parts: &[LemmaCheckResult]) -> Self {
        let worst = parts
            .iter()
            .min_by(|a, b| (a.min_margin + a.tol).total_cmp(&(b.min_margin + b.tol)))
            .expect("at least one part");
        let grid = parts.iter().map(|r| r.lemma_id.as_str()).collect::<Vec<_>>().join("+");
        Self {
            lemma_id: lemma_id.into(),
            param_grid: grid,
            min_margin: worst.min_margin,
            argmin: worst.argmin.clone(),
            passed: parts.iter().all(|r| r.passed),
            tol: worst.tol,
        }
    }
}

/// Interior nodes `lo + (hi - lo) k / (n + 1)`, `k = 1..=n`.
pub(crate) fn interior(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    let h = (hi - lo) / (n + 1) as f64;
    (1..=n).map(move |k| lo + h * k as f64)
}

/// Central-difference slope of `f` at `x`, scaled by `max(1, |f(x)|)`.
pub(crate) fn scaled_slope<F: Fn(f64) -> f64>(f: &F, x: f64) -> f64 {
    let d = (f(x + FD_STEP) - f(x - FD_STEP)) / (2.0 * FD_STEP);
    d / f(x).abs().max(1.0)
}

const PSI_IDS: [&str; 5] = ["psi-step1-shape", "psi-step2", "lemma9-localization", "psi-endpoint", "psi-nonneg"];

/// Ids of every check whose hypotheses hold at `(p, s)`, in a fixed order.
pub fn applicable_ids(p: f64, s: f64) -> Result<Vec<&'static str>> {
    let star = critical_order(p)?;
    let critical = (s - star).abs() <= EPS_CRIT;
    let supercritical = s > star + EPS_CRIT;
    let mut out = vec!["coscosh"];
    if p >= 2.0 {
        out.push("lemma3-sine-ratio-lower");
        if p > 2.0 && p != 4.0 {
            out.push("claim1-sine-ratio-monotone");
        }
        if critical {
            out.push(GMode::CriticalBound.id());
        }
        if supercritical && p > 2.0 {
            out.push(GMode::SupercriticalUpper.id());
            out.push(GMode::SupercriticalLower.id());
        }
        if s >= 2.0 {
            out.push("lemma5-sign-pattern");
        }
        if p >= 4.0 && (critical || supercritical) {
            out.push("lemma4-hyperbolic-threshold");
        }
        if p > 2.0 + P2_BAND && (critical || supercritical) {
            out.push("lemma6-phi-monotone");
            out.push("descent");
        }
    } else {
        out.push("lemma7-sine-ratio-upper");
        out.push("claim2-monotone");
        if p <= 4.0 / 3.0 + 1e-12 && critical {
            out.extend(PSI_IDS);
        }
    }
    Ok(out)
}

/// Every id [`run_check`] understands.
pub fn known_ids() -> Vec<&'static str> {
    let mut ids = vec![
        "coscosh",
        "lemma3-sine-ratio-lower",
        "claim1-sine-ratio-monotone",
        GMode::CriticalBound.id(),
        GMode::SupercriticalUpper.id(),
        GMode::SupercriticalLower.id(),
        "lemma5-sign-pattern",
        "lemma4-hyperbolic-threshold",
        "lemma6-phi-monotone",
        "descent",
        "lemma7-sine-ratio-upper",
        "claim2-monotone",
    ];
    ids.extend(PSI_IDS);
    ids
}

/// Run one named check with `n` samples per sweep.
pub fn run_check(id: &str, p: f64, s: f64, n: usize) -> Result<LemmaCheckResult> {
    match id {
        "coscosh" => check_cosh_cos(n),
        "lemma3-sine-ratio-lower" => check_sine_ratio_lower(p, n),
        "claim1-sine-ratio-monotone" => {
            let (a, b) = ((2.0 - 0.5 * p).abs(), 0.5 * p);
            if a == 0.0 || a >= b {
                return domain(format!("the sine-ratio pair at p = {p} is degenerate"));
            }
            check_sine_ratio_monotone(a, b, n)
        }
        "G-critical-bound" => check_g_bounds(p, s, GMode::CriticalBound, n),
        "G-supercritical-upper" => check_g_bounds(p, s, GMode::SupercriticalUpper, n),
        "G-supercritical-lower" => check_g_bounds(p, s, GMode::SupercriticalLower, n),
        "lemma5-sign-pattern" => check_sign_pattern(p, s, 200),
        "lemma4-hyperbolic-threshold" => check_hyperbolic_threshold(p, s, n),
        "lemma6-phi-monotone" => check_phi_monotone(p, s, n),
        "descent" => check_descent(p, s, n),
        "lemma7-sine-ratio-upper" => check_sine_ratio_upper(p, n),
        "claim2-monotone" => check_claim2_monotone(p, n),
        id if PSI_IDS.contains(&id) => psi_suite(p, n)?
            .into_iter()
            .find(|r| r.lemma_id == id)
            .ok_or_else(|| Error::Unsupported(format!("{id} does not apply at p = {p}"))),
        _ => Err(Error::Unsupported(format!("unknown check id {id}"))),
    }
}

/// Every check whose hypotheses hold at `(p, s)`, in a fixed order.
pub fn run_applicable(p: f64, s: f64, n: usize) -> Result<Vec<LemmaCheckResult>> {
    let ids = applicable_ids(p, s)?;
    if ids.iter().any(|id| PSI_IDS.contains(id)) {
        let psi = psi_suite(p, n)?;
        let mut out = Vec::with_capacity(ids.len());
        for id in ids {
            match psi.iter().find(|r| r.lemma_id == id) {
                Some(r) => out.push(r.clone()),
                None => out.push(run_check(id, p, s, n)?),
            }
        }
        return Ok(out);
    }
    ids.into_iter().map(|id| run_check(id, p, s, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_tracks_margin() {
        let r = LemmaCheckResult::from_samples("x", String::new(), 1e-9, vec![(vec![1.0], 0.5), (vec![2.0], -1e-10)]);
        assert!(r.passed);
        assert_eq!(r.argmin, vec![2.0]);
        let r = LemmaCheckResult::from_samples("x", String::new(), 1e-9, vec![(vec![1.0], f64::NAN)]);
        assert!(!r.passed);
    }

    #[test]
    fn aggregate_keeps_worst() {
        let a = LemmaCheckResult::new("a", String::new(), 0.1, vec![0.0], 1e-9);
        let b = LemmaCheckResult::new("b", String::new(), -1.0, vec![1.0], 1e-9);
        let c = LemmaCheckResult::aggregate("ab", &[a, b]);
        assert!(!c.passed);
        assert_eq!(c.min_margin, -1.0);
    }

    #[test]
    fn registry_covers_applicable_ids() {
        let known = known_ids();
        for &(p, s) in &[(3.0, 8.0), (4.0, 2.0), (1.25, 0.0), (6.0, 0.0)] {
            let s = if s == 0.0 { critical_order(p).unwrap() } else { s };
            for id in applicable_ids(p, s).unwrap() {
                assert!(known.contains(&id), "{id}");
            }
        }
        assert!(run_check("nope", 3.0, 2.0, 10).is_err());
        assert!(run_check("claim1-sine-ratio-monotone", 4.0, 2.0, 10).is_err());
    }
}
