//! The family `f_γ = α Re g_γ + iβ Im g_γ` with `g_γ(z) = ((1+z)/(1−z))^γ`,
//! whose projection ratios approach the sharp constant as `γ → 1/p`.

use super::signal::{aggregate_pair, lp_norm_samples, node, project_plus, CircleSignal, GridOffset};
use crate::constants::{ln_lower_bound_maximand, CosSign};
use crate::error::{Error, Result};
use crate::quadrature::tanh_sinh;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Relative tolerance for `|Im g| = tan(πγ/2) Re g` on the boundary.
pub const PHASE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalFamilyParams {
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `1` samples the boundary, `r < 1` the circle of radius `r`.
    pub dilation_r: f64,
}

impl ExtremalFamilyParams {
    pub fn new(gamma: f64, alpha: f64, beta: f64, dilation_r: f64) -> Self {
        Self { gamma, alpha, beta, dilation_r }
    }

    /// `α, β` with `α + β = 1` and `|α − β| = e^{−y}`, oriented so the
    /// family ratio tends to the lower-bound maximand at `y` for this `p`.
    pub fn for_lower_bound(gamma: f64, p: f64, y: f64) -> Self {
        let e = (-y).exp();
        let (big, small) = (0.5 * (1.0 + e), 0.5 * (1.0 - e));
        match CosSign::for_exponent(p) {
            CosSign::MinusCos => Self::new(gamma, small, big, 1.0),
            CosSign::PlusCos => Self::new(gamma, big, small, 1.0),
        }
    }

    pub fn validate(&self, p: f64) -> Result<()> {
        if !(self.gamma > 0.0) || !(self.gamma * p < 1.0) {
            return Err(Error::Domain(format!("need 0 < γ < 1/p, got γ = {} at p = {p}", self.gamma)));
        }
        if !(self.dilation_r > 0.0 && self.dilation_r <= 1.0) {
            return Err(Error::Domain(format!("dilation must lie in (0, 1], got {}", self.dilation_r)));
        }
        Ok(())
    }

    fn check_grid(&self, offset: GridOffset) -> Result<()> {
        if self.dilation_r == 1.0 && offset == GridOffset::Zero {
            return Err(Error::Domain("g_γ is singular at t = 0; use the half-cell grid".into()));
        }
        Ok(())
    }
}

/// `g_γ(e^{it}) = |cot(t/2)|^γ e^{iγ(π/2) sgn cot(t/2)}`.
pub fn g_boundary(gamma: f64, t: f64) -> Complex64 {
    let c = 1.0 / (0.5 * t).tan();
    Complex64::from_polar(c.abs().powf(gamma), 0.5 * gamma * PI * c.signum())
}

/// `g_γ(r e^{it})` with the principal power; `r = 1` uses the boundary form.
pub fn g_gamma(gamma: f64, r: f64, t: f64) -> Complex64 {
    if r == 1.0 {
        return g_boundary(gamma, t);
    }
    let z = Complex64::from_polar(r, t);
    let one = Complex64::new(1.0, 0.0);
    ((one + z) / (one - z)).powf(gamma)
}

fn f_from_g(params: &ExtremalFamilyParams, g: Complex64) -> Complex64 {
    Complex64::new(params.alpha * g.re, params.beta * g.im)
}

fn closed_plus(params: &ExtremalFamilyParams, g: Complex64) -> Complex64 {
    0.5 * (params.alpha + params.beta) * g + 0.5 * (params.alpha - params.beta)
}

fn closed_minus(params: &ExtremalFamilyParams, g: Complex64) -> Complex64 {
    0.5 * (params.alpha - params.beta) * (g.conj() - 1.0)
}

fn g_samples(params: &ExtremalFamilyParams, n: usize, offset: GridOffset) -> Result<Vec<Complex64>> {
    params.check_grid(offset)?;
    if params.dilation_r > 1.0 || params.dilation_r <= 0.0 {
        return Err(Error::Domain(format!("dilation must lie in (0, 1], got {}", params.dilation_r)));
    }
    let g: Vec<Complex64> = (0..n).map(|j| g_gamma(params.gamma, params.dilation_r, node(j, n, offset))).collect();
    if params.dilation_r == 1.0 {
        let slope = (0.5 * PI * params.gamma).tan();
        for (j, z) in g.iter().enumerate() {
            let gap = (z.im.abs() - slope * z.re).abs();
            if gap > PHASE_TOL * z.norm().max(1.0) {
                return Err(Error::Domain(format!("phase identity broken at node {j}: gap {gap:e}")));
            }
        }
    }
    Ok(g)
}

/// Samples of `f_γ` and `g_γ` on the `n`-point grid.
pub fn extremal_signal(params: &ExtremalFamilyParams, n: usize, offset: GridOffset) -> Result<(CircleSignal, CircleSignal)> {
    let g = g_samples(params, n, offset)?;
    let f = g.iter().map(|&z| f_from_g(params, z)).collect();
    Ok((CircleSignal::from_samples(f, offset)?, CircleSignal::from_samples(g, offset)?))
}

/// `P₊f_γ = ((α+β)/2) g_γ + (α−β)/2` and `P₋f_γ = ((α−β)/2)(ḡ_γ − 1)`, sampled.
pub fn closed_form_projections(params: &ExtremalFamilyParams, n: usize, offset: GridOffset) -> Result<(CircleSignal, CircleSignal)> {
    let g = g_samples(params, n, offset)?;
    let plus = g.iter().map(|&z| closed_plus(params, z)).collect();
    let minus = g.iter().map(|&z| closed_minus(params, z)).collect();
    Ok((CircleSignal::from_samples(plus, offset)?, CircleSignal::from_samples(minus, offset)?))
}

/// Relative `L²` gap between the FFT projection of `f_γ` and the closed form.
pub fn projection_discrepancy(params: &ExtremalFamilyParams, n: usize) -> Result<f64> {
    let (f, _) = extremal_signal(params, n, GridOffset::Half)?;
    let (plus, _) = closed_form_projections(params, n, GridOffset::Half)?;
    let spectral = project_plus(&f);
    let diff = spectral.samples().iter().zip(plus.samples()).map(|(a, b)| (a - b).norm());
    let num = lp_norm_samples(diff.collect::<Vec<_>>().into_iter(), 2.0);
    Ok(num / super::signal::lp_norm(&plus, 2.0))
}

/// `(|α+β|^s + |α−β|^s)^{1/s} / (2 (α² cos²(π/2p) + β² sin²(π/2p))^{1/2})`.
pub fn family_target(alpha: f64, beta: f64, p: f64, s: f64) -> f64 {
    let (c, sn) = ((PI / (2.0 * p)).cos(), (PI / (2.0 * p)).sin());
    aggregate_pair((alpha + beta).abs(), (alpha - beta).abs(), s) / (2.0 * (alpha * alpha * c * c + beta * beta * sn * sn).sqrt())
}

/// Projection ratio of `f_γ` by adaptive quadrature on the boundary.
///
/// `|f|`, `|P₊f|` and `|P₋f|` are even in `t`, so `(0, π)` suffices; the
/// singularity at `t = 0` is integrable because `γp < 1`.
pub fn quadrature_ratio(params: &ExtremalFamilyParams, p: f64, s: f64) -> Result<f64> {
    params.validate(p)?;
    let num = tanh_sinh(
        |t| {
            let g = g_boundary(params.gamma, t);
            aggregate_pair(closed_plus(params, g).norm(), closed_minus(params, g).norm(), s).powf(p)
        },
        0.0,
        PI,
        1e-12,
        12,
    );
    let den = tanh_sinh(|t| f_from_g(params, g_boundary(params.gamma, t)).norm().powf(p), 0.0, PI, 1e-12, 12);
    if !(den > 0.0) {
        return Err(Error::Domain("extremal signal has zero norm".into()));
    }
    Ok((num / den).powf(1.0 / p))
}

/// Projection ratio of `f_γ` as a half-cell Riemann sum on `n` nodes.
pub fn grid_ratio(params: &ExtremalFamilyParams, p: f64, s: f64, n: usize) -> Result<f64> {
    params.validate(p)?;
    let g = g_samples(params, n, GridOffset::Half)?;
    let num = lp_norm_samples(g.iter().map(|&z| aggregate_pair(closed_plus(params, z).norm(), closed_minus(params, z).norm(), s)).collect::<Vec<_>>().into_iter(), p);
    let den = lp_norm_samples(g.iter().map(|&z| f_from_g(params, z).norm()).collect::<Vec<_>>().into_iter(), p);
    Ok(num / den)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub gamma: f64,
    pub ratio: f64,
    pub grid_ratio: f64,
    pub target: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SharpnessSweep {
    pub p: f64,
    pub s: f64,
    pub y_star: f64,
    pub alpha: f64,
    pub beta: f64,
    pub target: f64,
    /// `|target − lower-bound maximand at y_star|`.
    pub identity_gap: f64,
    pub rows: Vec<SweepRow>,
}

impl SharpnessSweep {
    pub fn strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].ratio > w[0].ratio)
    }

    pub fn last_fraction(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.ratio / self.target)
    }
}

pub fn sharpness_sweep(p: f64, s: f64, gammas: &[f64], y_star: f64, n: usize) -> Result<SharpnessSweep> {
    if !(y_star >= 0.0) {
        return Err(Error::Domain(format!("y_star must be nonnegative, got {y_star}")));
    }
    let base = ExtremalFamilyParams::for_lower_bound(0.5 / p, p, y_star);
    let target = family_target(base.alpha, base.beta, p, s);
    let identity_gap = (target - ln_lower_bound_maximand(y_star, p, s).exp()).abs();
    let mut rows = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        let params = ExtremalFamilyParams { gamma, ..base };
        params.validate(p)?;
        rows.push(SweepRow { gamma, ratio: quadrature_ratio(&params, p, s)?, grid_ratio: grid_ratio(&params, p, s, n)?, target });
    }
    Ok(SharpnessSweep { p, s, y_star, alpha: base.alpha, beta: base.beta, target, identity_gap, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::signal::project_minus;

    #[test]
    fn g_vanishes_at_pi() {
        assert!(g_boundary(0.3, PI).norm() < 1e-4);
        assert!(g_gamma(0.3, 0.5, PI).re > 0.0);
    }

    #[test]
    fn boundary_phase_and_real_case() {
        let p = ExtremalFamilyParams::new(0.25, 1.0, 0.0, 1.0);
        let (f, g) = extremal_signal(&p, 256, GridOffset::Half).unwrap();
        let slope = (PI * 0.125).tan();
        for z in g.samples() {
            assert!((z.im.abs() - slope * z.re).abs() < 1e-12 * z.norm().max(1.0));
        }
        assert!(f.samples().iter().all(|z| z.im == 0.0));
        assert!(extremal_signal(&p, 256, GridOffset::Zero).is_err());
    }

    #[test]
    fn closed_form_degenerate_cases() {
        let eq = ExtremalFamilyParams::new(0.2, 1.0, 1.0, 1.0);
        let (plus, minus) = closed_form_projections(&eq, 64, GridOffset::Half).unwrap();
        let (_, g) = extremal_signal(&eq, 64, GridOffset::Half).unwrap();
        assert_eq!(plus.samples(), g.samples());
        assert!(minus.samples().iter().all(|z| z.norm() == 0.0));
        let anti = ExtremalFamilyParams::new(0.2, 1.0, -1.0, 1.0);
        let (plus, minus) = closed_form_projections(&anti, 64, GridOffset::Half).unwrap();
        assert!(plus.samples().iter().all(|z| (z - 1.0).norm() < 1e-15));
        for (m, z) in minus.samples().iter().zip(g.samples()) {
            assert!((m - (z.conj() - 1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn dilated_projections_match_fft() {
        let params = ExtremalFamilyParams::new(0.2, 0.8, 0.3, 0.95);
        assert!(projection_discrepancy(&params, 1 << 14).unwrap() < 1e-6);
        let (f, _) = extremal_signal(&params, 1 << 12, GridOffset::Half).unwrap();
        let (_, minus) = closed_form_projections(&params, 1 << 12, GridOffset::Half).unwrap();
        let m = project_minus(&f);
        let gap: f64 = m.samples().iter().zip(minus.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(gap < 1e-10);
    }

    #[test]
    fn target_matches_maximand() {
        for &(p, s, y) in &[(3.0, 8.0, 0.7), (3.0, 2.0, 0.0), (1.25, 3.0, 0.4), (6.0, 20.0, 1.3)] {
            let par = ExtremalFamilyParams::for_lower_bound(0.1, p, y);
            let gap = family_target(par.alpha, par.beta, p, s) - ln_lower_bound_maximand(y, p, s).exp();
            assert!(gap.abs() < 1e-12, "{p} {s} {y}: {gap}");
        }
        let par = ExtremalFamilyParams::for_lower_bound(0.1, 3.0, 0.0);
        assert!((family_target(par.alpha, par.beta, 3.0, 2.0) - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn sweep_approaches_target() {
        let sw = sharpness_sweep(3.0, 2.0, &[0.27, 0.30, 0.32], 0.0, 1 << 12).unwrap();
        assert!(sw.strictly_increasing());
        assert!(sw.last_fraction() >= 0.9);
        assert!(sw.identity_gap < 1e-12);
        assert!(sw.rows.iter().all(|r| r.ratio < sw.target));
        // substituted-variable quadrature at 40 digits
        let oracle = [1.2754340056132472, 1.3329442445162494, 1.3790855502282842];
        for (r, o) in sw.rows.iter().zip(oracle) {
            assert!((r.ratio - o).abs() < 1e-9, "{} vs {o}", r.ratio);
        }
    }

    #[test]
    fn rejects_gamma_outside_range() {
        assert!(sharpness_sweep(3.0, 2.0, &[0.34], 0.0, 1024).is_err());
        assert!(ExtremalFamilyParams::new(0.0, 1.0, 1.0, 1.0).validate(3.0).is_err());
    }
}
