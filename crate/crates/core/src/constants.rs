//! Critical cutoff, the maximization of `K`, and the sharp constants.

use crate::error::{domain, Error, Result};
use crate::numerics::{bisect, golden_max, ln_cosh_shift, logcosh, one_minus_cos, one_plus_cos, sinh_ratio};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

/// Half-width of the band around `s*(p)` classified as critical.
pub const EPS_CRIT: f64 = 1e-9;
/// Default right end of every search in `y`.
pub const Y_MAX: f64 = 50.0;
/// Relative tolerance of the root defining `ỹ`.
pub const ROOT_TOL: f64 = 1e-12;
/// Exponents closer than this to 2 use the `p = 2` formulas.
pub const P2_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    pub p: f64,
    pub s: f64,
    pub regime: Regime,
}

impl ExponentPair {
    pub fn new(p: f64, s: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return domain(format!("p must exceed 1, got {p}"));
        }
        if !(s > 0.0 && s.is_finite()) {
            return domain(format!("s must be positive, got {s}"));
        }
        let star = critical_order(p)?;
        let regime = if s < star - EPS_CRIT {
            Regime::Subcritical
        } else if s <= star + EPS_CRIT {
            Regime::Critical
        } else {
            Regime::Supercritical
        };
        Ok(Self { p, s, regime })
    }

    /// The pair `(p, s*(p))`.
    pub fn critical(p: f64) -> Result<Self> {
        Self::new(p, critical_order(p)?)
    }

    pub fn at_most_critical(&self) -> bool {
        self.regime != Regime::Supercritical
    }
}

/// Sign in front of `cos(π/p)` in the denominator of `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosSign {
    MinusCos,
    PlusCos,
}

impl CosSign {
    /// The sign used by the lower bound: minus for `p >= 2`, plus below.
    pub fn for_exponent(p: f64) -> Self {
        if p >= 2.0 {
            CosSign::MinusCos
        } else {
            CosSign::PlusCos
        }
    }

    /// `1 ∓ cos(π/p)`, the value of `cosh y ∓ cos(π/p)` at `y = 0`.
    pub fn shift(self, p: f64) -> f64 {
        match self {
            CosSign::MinusCos => one_minus_cos(PI / p),
            CosSign::PlusCos => one_plus_cos(PI / p),
        }
    }
}

/// `s*(p)`: `csc²(π/2p)` for `p >= 2`, `sec²(π/2p)` for `1 < p < 2`.
pub fn critical_order(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return domain(format!("critical order needs p > 1, got {p}"));
    }
    let a = FRAC_PI_2 / p;
    let v = if p >= 2.0 { a.sin() } else { a.cos() };
    Ok(1.0 / (v * v))
}

/// `ln K(y)` with `K(y) = cosh^{p/s}(sy/2) / (cosh y ∓ cos π/p)^{p/2}`.
pub fn ln_k(y: f64, p: f64, s: f64, sign: CosSign) -> Result<f64> {
    if !(y >= 0.0) {
        return domain(format!("K needs y >= 0, got {y}"));
    }
    let shift = sign.shift(p);
    if y == 0.0 && shift <= 0.0 {
        return domain("denominator of K vanishes");
    }
    Ok((p / s) * logcosh(0.5 * s * y) - 0.5 * p * ln_cosh_shift(y, shift))
}

pub fn k_value(y: f64, p: f64, s: f64, sign: CosSign) -> Result<f64> {
    ln_k(y, p, s, sign).map(f64::exp)
}

/// The factor whose sign is the sign of `K'`; strictly decreasing in `y`.
pub fn k_root_factor(y: f64, p: f64, s: f64) -> f64 {
    sinh_ratio(0.5 * (s - 2.0), 0.5 * s, y) - (PI / p).cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KMaximum {
    /// Argmax of `K`; `None` when the supremum is only approached as `y → ∞`.
    pub y_tilde: Option<f64>,
    /// `sup K`.
    pub c: f64,
}

impl KMaximum {
    pub fn attained(&self) -> bool {
        self.y_tilde.is_some()
    }
}

pub fn maximize_k(p: f64, s: f64) -> Result<KMaximum> {
    maximize_k_with(p, s, Y_MAX)
}

/// Maximize `K` (minus sign) over `y >= 0`.
pub fn maximize_k_with(p: f64, s: f64, y_max: f64) -> Result<KMaximum> {
    if !(p >= 2.0) {
        return domain(format!("maximize_K needs p >= 2, got {p}"));
    }
    let pair = ExponentPair::new(p, s)?;
    if pair.at_most_critical() {
        return Ok(KMaximum { y_tilde: Some(0.0), c: k_value(0.0, p, s, CosSign::MinusCos)? });
    }
    if p - 2.0 <= P2_BAND {
        // K(y) increases to its limit 2^{1 - 2/s}
        return Ok(KMaximum { y_tilde: None, c: (LN_2 * (1.0 - 2.0 / s)).exp() });
    }
    let hi = k_root_factor(y_max, p, s);
    if hi >= 0.0 {
        return Err(Error::NonConvergence(format!(
            "K' keeps its sign up to y_max = {y_max} for p = {p}, s = {s}"
        )));
    }
    let y = bisect(|y| k_root_factor(y, p, s), 0.0, y_max, ROOT_TOL)?;
    Ok(KMaximum { y_tilde: Some(y), c: k_value(y, p, s, CosSign::MinusCos)? })
}

/// `D = C (cosh ỹ − cos π/p)^{p/2−1} sin(π/p)`.
pub fn d_constant(p: f64, s: f64) -> Result<f64> {
    let m = maximize_k(p, s)?;
    let y = m.y_tilde.ok_or_else(|| {
        Error::Domain(format!("sup K is not attained at p = {p}, s = {s}; D is undefined"))
    })?;
    let shift = CosSign::MinusCos.shift(p);
    let ln_d = m.c.ln() + (0.5 * p - 1.0) * ln_cosh_shift(y, shift) + (PI / p).sin().ln();
    Ok(ln_d.exp())
}

/// `2^{1/s} / (2 sin(π/2p))` for `p >= 2`, `2^{1/s} / (2 cos(π/2p))` below.
pub fn closed_form_a(p: f64, s: f64) -> f64 {
    let a = FRAC_PI_2 / p;
    let trig = if p >= 2.0 { a.sin() } else { a.cos() };
    (LN_2 / s).exp() / (2.0 * trig)
}

/// The sharp constant `A_{p,s}`.
///
/// For `p >= 2` this is `2^{1/s} (C / 2^{p/2})^{1/p}` with `C = sup K`.
pub fn a_constant(p: f64, s: f64) -> Result<f64> {
    let pair = ExponentPair::new(p, s)?;
    if p < 2.0 {
        if !pair.at_most_critical() {
            return Err(Error::Unsupported(format!(
                "no sharp constant is known for 1 < p < 2 with s > sec²(π/2p) (p = {p}, s = {s})"
            )));
        }
        return Ok(closed_form_a(p, s));
    }
    let m = maximize_k(p, s)?;
    Ok(a_from_c(p, s, m.c))
}

/// `2^{1/s} (C / 2^{p/2})^{1/p}`.
pub fn a_from_c(p: f64, s: f64, c: f64) -> f64 {
    (LN_2 * (1.0 / s - 0.5) + c.ln() / p).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    /// Maximizer; `None` when the supremum is the limit at infinity.
    pub y_star: Option<f64>,
    pub value: f64,
}

/// `ln` of `2^{1/s} cosh^{1/s}(sy/2) / (√2 (cosh y ∓ cos π/p)^{1/2})`.
pub fn ln_lower_bound_maximand(y: f64, p: f64, s: f64) -> f64 {
    let shift = CosSign::for_exponent(p).shift(p);
    LN_2 * (1.0 / s - 0.5) + logcosh(0.5 * s * y) / s - 0.5 * ln_cosh_shift(y, shift)
}

/// Twice the log-derivative of the maximand, up to a positive factor.
fn lower_bound_slope(y: f64, p: f64, s: f64) -> f64 {
    let c = (PI / p).cos();
    let den = match CosSign::for_exponent(p) {
        CosSign::MinusCos => y.cosh() - c,
        CosSign::PlusCos => y.cosh() + c,
    };
    if y > 350.0 {
        return (0.5 * s * y).tanh() - 1.0;
    }
    (0.5 * s * y).tanh() - y.sinh() / den
}

pub fn sharp_lower_bound(p: f64, s: f64) -> Result<LowerBound> {
    sharp_lower_bound_with(p, s, Y_MAX)
}

/// Maximize the lower-bound functional over `y ∈ [0, y_max]` by golden
/// section, then sharpen the maximizer by bisection on the slope sign.
pub fn sharp_lower_bound_with(p: f64, s: f64, y_max: f64) -> Result<LowerBound> {
    ExponentPair::new(p, s)?;
    let f = |y: f64| ln_lower_bound_maximand(y, p, s);
    let (x, fx) = golden_max(f, 0.0, y_max, 1e-9);
    // flat maximands (p = s = 2) resolve to the smallest maximizer
    if f(0.0) >= fx - 4.0 * f64::EPSILON {
        return Ok(LowerBound { y_star: Some(0.0), value: f(0.0).exp() });
    }
    let slope = |y: f64| lower_bound_slope(y, p, s);
    let edge = 1e-6 * y_max;
    if (x >= y_max - edge && slope(y_max) >= 0.0) || f(y_max) >= fx {
        if (p - 2.0).abs() <= P2_BAND {
            return Ok(LowerBound { y_star: None, value: 1.0 });
        }
        return Err(Error::NonConvergence(format!(
            "lower bound still increasing at y_max = {y_max} for p = {p}, s = {s}"
        )));
    }
    let y = if x <= edge && slope(edge) <= 0.0 {
        0.0
    } else {
        let mut d = 1e-3;
        let (mut lo, mut hi) = ((x - d).max(0.0), (x + d).min(y_max));
        while !(slope(lo) > 0.0 || lo == 0.0) || !(slope(hi) < 0.0 || hi == y_max) {
            d *= 2.0;
            lo = (x - d).max(0.0);
            hi = (x + d).min(y_max);
        }
        if lo == 0.0 && slope(lo.max(1e-300)) <= 0.0 {
            0.0
        } else {
            bisect(slope, lo.max(1e-300), hi, ROOT_TOL).unwrap_or(x)
        }
    };
    Ok(LowerBound { y_star: Some(y), value: f(y).exp() })
}

/// `ỹ`, `C`, `D`, `A` for one exponent pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpConstantBundle {
    pub pair: ExponentPair,
    pub y_tilde: Option<f64>,
    pub c_ps: f64,
    pub d_ps: Option<f64>,
    pub a_ps: f64,
}

impl SharpConstantBundle {
    /// For `1 < p < 2` (up to the critical order) `C` and `D` are the
    /// coefficients of the plus-sign master function.
    pub fn compute(p: f64, s: f64) -> Result<Self> {
        let pair = ExponentPair::new(p, s)?;
        if p < 2.0 {
            let a_ps = a_constant(p, s)?;
            return Ok(Self {
                pair,
                y_tilde: Some(0.0),
                c_ps: k_value(0.0, p, s, CosSign::PlusCos)?,
                d_ps: Some((FRAC_PI_2 / p).tan()),
                a_ps,
            });
        }
        let m = maximize_k(p, s)?;
        let d_ps = if m.attained() { Some(d_constant(p, s)?) } else { None };
        Ok(Self { pair, y_tilde: m.y_tilde, c_ps: m.c, d_ps, a_ps: a_from_c(p, s, m.c) })
    }

    /// `C / 2^{p/2}`, the coefficient of `|z + w̄|^p` in the pointwise inequality.
    pub fn c_normalized(&self) -> f64 {
        (self.c_ps.ln() - 0.5 * self.pair.p * LN_2).exp()
    }
}
