//! Searches showing the closed forms fail past the cutoffs.

use crate::constants::{critical_order, k_value, maximize_k, CosSign, ExponentPair, EPS_CRIT, Y_MAX};
use crate::error::{domain, Error, Result};
use crate::minorant::{grid_minimum, Branch, GridSpec, Master};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Outcome of a falsification search. `found` means the expected
/// counterexample exists; `value` is the master-function minimum (p < 2)
/// or the excess `K(ỹ) − K(0)` (p >= 2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Falsification {
    pub id: String,
    pub p: f64,
    pub s: f64,
    pub found: bool,
    pub witness: Vec<f64>,
    pub value: f64,
    pub threshold: f64,
}

/// Grid search for `Φ < −tol` with the plus-sign master function at
/// `4/3 < p < 2`.
pub fn falsify_lt2(p: f64, s: f64, grid: GridSpec, tol: f64) -> Result<Falsification> {
    if !(p > 4.0 / 3.0 && p < 2.0) {
        return domain(format!("the p < 2 falsification needs 4/3 < p < 2, got {p}"));
    }
    let master = Master::new(Branch::CriticalLt2, ExponentPair::new(p, s)?)?;
    grid.validate(crate::minorant::CELL_BUDGET)?;
    let (v, (i, j), _) = grid_minimum(&master, &grid, tol);
    if !(v < -tol) {
        return Err(Error::WitnessNotFound(format!("min Φ = {v} >= -{tol} at p = {p}")));
    }
    Ok(Falsification {
        id: "falsify-p-gt-4-3".into(),
        p,
        s,
        found: true,
        witness: vec![grid.ys()[i], grid.ts()[j]],
        value: v,
        threshold: -tol,
    })
}

/// `K(y) > K(0)` for some `y > 0` when `s > s*(p)`, `p >= 2`.
pub fn falsify_supercritical(p: f64, s: f64) -> Result<Falsification> {
    if !(p >= 2.0) {
        return domain(format!("the supercritical falsification needs p >= 2, got {p}"));
    }
    let star = critical_order(p)?;
    if s <= star + EPS_CRIT {
        return domain(format!("s = {s} is not above s*(p) = {star}"));
    }
    let k0 = k_value(0.0, p, s, CosSign::MinusCos)?;
    let m = maximize_k(p, s)?;
    // an unattained supremum is approached at the end of the search range
    let y = m.y_tilde.unwrap_or(Y_MAX);
    let excess = k_value(y, p, s, CosSign::MinusCos)? - k0;
    if !(excess > 0.0) {
        return Err(Error::WitnessNotFound(format!("K(y) <= K(0) on the search range at p = {p}, s = {s}")));
    }
    Ok(Falsification {
        id: "falsify-supercritical".into(),
        p,
        s,
        found: true,
        witness: vec![y],
        value: excess,
        threshold: 0.0,
    })
}

/// Default searches: `y ∈ [0, 2] × t ∈ [0, π]` on 400×400 nodes at tol `1e−6`
/// for `p < 2`, the maximization of `K` otherwise.
pub fn falsify_beyond_cutoff(p: f64, s: f64) -> Result<Falsification> {
    if p < 2.0 {
        let grid = GridSpec { y_max: 2.0, n_y: 400, t_lo: 0.0, t_hi: PI, n_t: 400, offset_half_cell: false };
        falsify_lt2(p, s, grid, 1e-6)
    } else {
        falsify_supercritical(p, s)
    }
}
