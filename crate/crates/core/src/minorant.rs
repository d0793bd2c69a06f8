//! The angular minorant `v_p`, the minorant `E(z, w)`, the master functions
//! `Φ` and grid verification of the pointwise inequalities they encode.

use crate::constants::{critical_order, d_constant, maximize_k, CosSign, ExponentPair, EPS_CRIT};
use crate::error::{domain, Error, Result};
use crate::numerics::{linspace, logcosh, one_minus_cos, one_plus_cos};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, LN_2, PI, TAU};

/// Default margin tolerance of grid checks.
pub const MARGIN_TOL: f64 = 1e-9;
/// Default cap on `n_y * n_t`.
pub const CELL_BUDGET: u64 = 100_000_000;

/// `v_p(t)` for `p >= 2`; even and `π`-periodic.
pub fn v_p(t: f64, p: f64) -> Result<f64> {
    if !(p >= 2.0) {
        return domain(format!("v_p is defined for p >= 2, got {p}"));
    }
    Ok(v_p_unchecked(t, p))
}

fn v_p_unchecked(t: f64, p: f64) -> f64 {
    let mut tau = t.abs() % PI;
    if tau > FRAC_PI_2 {
        tau = PI - tau;
    }
    if tau > FRAC_PI_2 - PI / p {
        -(p * (FRAC_PI_2 - tau)).cos()
    } else {
        (p * (FRAC_PI_2 - tau)).cos().abs().max((p * (FRAC_PI_2 + tau)).cos().abs())
    }
}

/// `E(z, w) = (|z||w|)^{p/2} v_p((arg z + arg w)/2)`.
pub fn minorant_e(z: Complex64, w: Complex64, p: f64) -> Result<f64> {
    if !(p >= 2.0) {
        return domain(format!("E is defined for p >= 2, got {p}"));
    }
    let m = z.norm() * w.norm();
    if m == 0.0 {
        return Ok(0.0);
    }
    Ok(m.powf(0.5 * p) * v_p_unchecked(0.5 * (z.arg() + w.arg()), p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    CriticalGe2,
    SupercriticalGe2,
    CriticalLt2,
}

impl Branch {
    pub fn id(self) -> &'static str {
        match self {
            Branch::CriticalGe2 => "master-critical-ge2",
            Branch::SupercriticalGe2 => "master-supercritical-ge2",
            Branch::CriticalLt2 => "master-critical-lt2",
        }
    }

    /// Natural `t` range of the reduced problem.
    pub fn t_range(self, p: f64) -> (f64, f64) {
        match self {
            Branch::CriticalLt2 => (0.0, PI),
            _ => (0.0, 2.0 * PI / p),
        }
    }
}

/// `Φ` for one branch with its constants resolved once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Master {
    pub branch: Branch,
    pub pair: ExponentPair,
    /// Coefficient of `(cosh y ∓ cos t)^{p/2}`.
    pub c: f64,
    /// Coefficient of `cos(tp/2)` (entering with `+` for `p >= 2`, `−` below).
    pub d: f64,
    /// `ỹ`, the `y` of the predicted zero `(ỹ, π/p)`.
    pub y_tilde: f64,
}

impl Master {
    /// Critical branches also accept smaller `s`: `Φ` only grows as `s` decreases.
    pub fn new(branch: Branch, pair: ExponentPair) -> Result<Self> {
        let (p, s) = (pair.p, pair.s);
        let star = critical_order(p)?;
        let mismatch = |what: &str| {
            Err(Error::ParameterMismatch(format!("{} needs {what} (p = {p}, s = {s}, s* = {star})", branch.id())))
        };
        match branch {
            Branch::CriticalGe2 => {
                if p < 2.0 {
                    return mismatch("p >= 2");
                }
                if s > star + EPS_CRIT {
                    return mismatch("s <= s*");
                }
                let c = one_minus_cos(PI / p).powf(-0.5 * p);
                Ok(Self { branch, pair, c, d: 1.0 / (0.5 * PI / p).tan(), y_tilde: 0.0 })
            }
            Branch::SupercriticalGe2 => {
                if p < 2.0 {
                    return mismatch("p >= 2");
                }
                if s <= star + EPS_CRIT {
                    return mismatch("s > s*");
                }
                let m = maximize_k(p, s)?;
                let y = m.y_tilde.ok_or_else(|| {
                    Error::ParameterMismatch(format!("sup K not attained at p = {p}, s = {s}"))
                })?;
                Ok(Self { branch, pair, c: m.c, d: d_constant(p, s)?, y_tilde: y })
            }
            Branch::CriticalLt2 => {
                if !(p > 1.0 && p < 2.0) {
                    return mismatch("1 < p < 2");
                }
                if s > star + EPS_CRIT {
                    return mismatch("s <= s*");
                }
                let c = one_plus_cos(PI / p).powf(-0.5 * p);
                Ok(Self { branch, pair, c, d: (0.5 * PI / p).tan(), y_tilde: 0.0 })
            }
        }
    }

    fn sign(&self) -> CosSign {
        match self.branch {
            Branch::CriticalLt2 => CosSign::PlusCos,
            _ => CosSign::MinusCos,
        }
    }

    fn lhs_y(&self, y: f64) -> f64 {
        ((self.pair.p / self.pair.s) * logcosh(0.5 * self.pair.s * y)).exp()
    }

    fn shift_y(y: f64) -> f64 {
        let h = (0.5 * y).sinh();
        2.0 * h * h
    }

    fn shift_t(&self, t: f64) -> f64 {
        match self.sign() {
            CosSign::MinusCos => one_minus_cos(t),
            CosSign::PlusCos => one_plus_cos(t),
        }
    }

    fn trig_t(&self, t: f64) -> f64 {
        let v = self.d * (0.5 * t * self.pair.p).cos();
        match self.branch {
            Branch::CriticalLt2 => -v,
            _ => v,
        }
    }

    fn combine(&self, lhs: f64, sy: f64, st: f64, trig: f64) -> f64 {
        -lhs + self.c * (sy + st).powf(0.5 * self.pair.p) + trig
    }

    /// `Φ(y, t)`.
    pub fn phi(&self, y: f64, t: f64) -> f64 {
        self.combine(self.lhs_y(y), Self::shift_y(y), self.shift_t(t), self.trig_t(t))
    }

    /// RHS − LHS of the pointwise inequality in `(z, w)`.
    pub fn margin(&self, z: Complex64, w: Complex64) -> f64 {
        let (p, s) = (self.pair.p, self.pair.s);
        let (r, big_r) = (z.norm(), w.norm());
        let lhs = power_mean_p(r, big_r, p, s);
        let sum = (z + w.conj()).norm();
        match self.branch {
            Branch::CriticalLt2 => {
                // |z + w̄|^p / (2^p cos^p(π/2p)) − tan(π/2p) Re (zw)^{p/2}
                let k = (2.0 * (0.5 * PI / p).cos()).powf(-p);
                let zw = z * w;
                let re = if zw.norm() == 0.0 { 0.0 } else { zw.norm().powf(0.5 * p) * (0.5 * p * zw.arg()).cos() };
                k * sum.powf(p) - self.d * re - lhs
            }
            _ => {
                let k = (self.c.ln() - 0.5 * p * LN_2).exp();
                let m = r * big_r;
                let e = if m == 0.0 { 0.0 } else { m.powf(0.5 * p) * v_p_unchecked(0.5 * (z.arg() + w.arg()), p) };
                k * sum.powf(p) - self.d * e - lhs
            }
        }
    }

    /// The `(z, w)` whose margin, scaled by `e^{py/2}`, is `Φ(y, t)`.
    pub fn reduced_point(&self, y: f64, t: f64) -> (Complex64, Complex64) {
        let arg = match self.branch {
            Branch::CriticalLt2 => t,
            _ => PI - t,
        };
        (Complex64::from_polar((-y).exp(), arg), Complex64::new(1.0, 0.0))
    }
}

/// `((r^s + R^s)/2)^{p/s}` without overflow.
fn power_mean_p(r: f64, big_r: f64, p: f64, s: f64) -> f64 {
    let m = r.max(big_r);
    if m == 0.0 {
        return 0.0;
    }
    let q = r.min(big_r) / m;
    m.powf(p) * (0.5 * (1.0 + q.powf(s))).powf(p / s)
}

pub fn phi_master(y: f64, t: f64, pair: ExponentPair, branch: Branch) -> Result<f64> {
    Ok(Master::new(branch, pair)?.phi(y, t))
}

pub fn elementary_margin(z: Complex64, w: Complex64, pair: ExponentPair, branch: Branch) -> Result<f64> {
    Ok(Master::new(branch, pair)?.margin(z, w))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub y_max: f64,
    pub n_y: usize,
    pub t_lo: f64,
    pub t_hi: f64,
    pub n_t: usize,
    pub offset_half_cell: bool,
}

impl GridSpec {
    pub fn for_branch(branch: Branch, p: f64, y_max: f64, n_y: usize, n_t: usize) -> Self {
        let (t_lo, t_hi) = branch.t_range(p);
        Self { y_max, n_y, t_lo, t_hi, n_t, offset_half_cell: false }
    }

    pub fn validate(&self, budget: u64) -> Result<()> {
        if self.n_y < 2 || self.n_t < 2 {
            return domain("grid counts must be at least 2");
        }
        if !(self.t_lo < self.t_hi) || !(self.y_max > 0.0) {
            return domain("empty grid range");
        }
        let cells = self.n_y as u64 * self.n_t as u64;
        if cells > budget {
            return Err(Error::CellBudget { cells, budget });
        }
        Ok(())
    }

    pub fn ys(&self) -> Vec<f64> {
        linspace(0.0, self.y_max, self.n_y, self.offset_half_cell)
    }

    pub fn ts(&self) -> Vec<f64> {
        linspace(self.t_lo, self.t_hi, self.n_t, self.offset_half_cell)
    }

    /// Spacing `(dy, dt)` between neighbouring nodes.
    pub fn cell(&self) -> (f64, f64) {
        let div = |n: usize| if self.offset_half_cell { n as f64 } else { (n - 1) as f64 };
        (self.y_max / div(self.n_y), (self.t_hi - self.t_lo) / div(self.n_t))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub params: ExponentPair,
    pub grid: GridSpec,
    pub min_margin: f64,
    pub argmin: (f64, f64),
    pub violations: u64,
    pub tol: f64,
    /// Worst relative gap between `Φ` and the scaled pointwise margin.
    pub reduction_max_rel_err: f64,
    /// Smallest normalized margin over random points of the full inequality.
    pub spot_min_margin: f64,
    pub spot_violations: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.spot_violations == 0 && self.reduction_max_rel_err <= 1e-9
    }
}

pub fn verify_region(branch: Branch, pair: ExponentPair, grid: GridSpec) -> Result<VerificationReport> {
    verify_region_with(branch, pair, grid, MARGIN_TOL, 0x5eed)
}

/// Minimum of `Φ` over the grid with lexicographic tie-break.
pub fn grid_minimum(master: &Master, grid: &GridSpec, tol: f64) -> (f64, (usize, usize), u64) {
    let ys = grid.ys();
    let ts = grid.ts();
    let st: Vec<f64> = ts.iter().map(|&t| master.shift_t(t)).collect();
    let tr: Vec<f64> = ts.iter().map(|&t| master.trig_t(t)).collect();
    let rows: Vec<(f64, usize, u64)> = ys
        .par_iter()
        .map(|&y| {
            let (lhs, sy) = (master.lhs_y(y), Master::shift_y(y));
            let mut best = (f64::INFINITY, 0usize);
            let mut bad = 0u64;
            for j in 0..ts.len() {
                let v = master.combine(lhs, sy, st[j], tr[j]);
                if v < best.0 || v.is_nan() {
                    best = (v, j);
                }
                if !(v >= -tol) {
                    bad += 1;
                }
            }
            (best.0, best.1, bad)
        })
        .collect();
    let mut best = (f64::INFINITY, (0, 0));
    let mut bad = 0;
    for (i, &(v, j, b)) in rows.iter().enumerate() {
        bad += b;
        if v < best.0 || v.is_nan() {
            best = (v, (i, j));
        }
    }
    (best.0, best.1, bad)
}

pub fn verify_region_with(
    branch: Branch,
    pair: ExponentPair,
    grid: GridSpec,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    grid.validate(CELL_BUDGET)?;
    let master = Master::new(branch, pair)?;
    let (min_margin, (i, j), violations) = grid_minimum(&master, &grid, tol);
    let (ys, ts) = (grid.ys(), grid.ts());
    let p = pair.p;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reduction_max_rel_err: f64 = 0.0;
    for _ in 0..100 {
        let (y, t) = (ys[rng.gen_range(0..ys.len())], ts[rng.gen_range(0..ts.len())]);
        let phi = master.phi(y, t);
        let (z, w) = master.reduced_point(y, t);
        let scaled = (0.5 * p * y).exp() * master.margin(z, w);
        let scale = phi.abs().max(master.lhs_y(y)).max(1.0);
        reduction_max_rel_err = reduction_max_rel_err.max((phi - scaled).abs() / scale);
    }

    let mut spot_min_margin = f64::INFINITY;
    let mut spot_violations = 0;
    for _ in 0..10_000 {
        let z = Complex64::from_polar(rng.gen_range(0.0..1.0f64).sqrt(), rng.gen_range(-PI..PI));
        // |z| <= |w| = 1 covers everything by homogeneity and the z <-> w̄ symmetry
        let w = Complex64::from_polar(1.0, rng.gen_range(-PI..PI));
        let m = master.margin(z, w);
        spot_min_margin = spot_min_margin.min(m);
        if m < -tol {
            spot_violations += 1;
        }
    }

    Ok(VerificationReport {
        check_id: branch.id().to_string(),
        params: pair,
        grid,
        min_margin,
        argmin: (ys[i], ts[j]),
        violations,
        tol,
        reduction_max_rel_err,
        spot_min_margin,
        spot_violations,
    })
}

/// `U(z) = |z|^p v_p(arg z)`.
pub fn u_p(z: Complex64, p: f64) -> f64 {
    let r = z.norm();
    if r == 0.0 {
        0.0
    } else {
        r.powf(p) * v_p_unchecked(z.arg(), p)
    }
}

/// 64-point circle mean of `U` about `z0` minus `U(z0)`.
pub fn sub_mean_margin(p: f64, z0: Complex64, radius: f64) -> f64 {
    let mean = (0..64)
        .map(|k| u_p(z0 + Complex64::from_polar(radius, TAU * k as f64 / 64.0), p))
        .sum::<f64>()
        / 64.0;
    mean - u_p(z0, p)
}

/// Sub-mean-value test of `U` at `trials` random centres in the disc.
///
/// The grid fields of the report are unused; `argmin` holds the worst centre.
pub fn subharmonic_mean_check(p: f64, trials: usize, radius: f64, seed: u64, tol: f64) -> Result<VerificationReport> {
    if !(p >= 2.0) {
        return domain(format!("U is defined for p >= 2, got {p}"));
    }
    if !(radius > 0.0 && radius < 1.0) {
        return domain("radius must lie in (0, 1)");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (f64::INFINITY, Complex64::new(0.0, 0.0));
    let mut violations = 0;
    for _ in 0..trials {
        let z0 = Complex64::from_polar((1.0 - radius) * rng.gen_range(0.0..1.0f64).sqrt(), rng.gen_range(-PI..PI));
        let m = sub_mean_margin(p, z0, radius);
        if m < worst.0 {
            worst = (m, z0);
        }
        if m < -tol {
            violations += 1;
        }
    }
    Ok(VerificationReport {
        check_id: "subharmonic-mean".into(),
        params: ExponentPair::critical(p)?,
        grid: GridSpec { y_max: radius, n_y: trials, t_lo: 0.0, t_hi: TAU, n_t: 64, offset_half_cell: false },
        min_margin: worst.0,
        argmin: (worst.1.re, worst.1.im),
        violations,
        tol,
        reduction_max_rel_err: 0.0,
        spot_min_margin: worst.0,
        spot_violations: 0,
    })
}
