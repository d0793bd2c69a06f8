use super::signal::{lp_norm, poisson_extend, CircleSignal};
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre_on;
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoperimetricValue {
    pub value: f64,
    pub bound: f64,
}

impl IsoperimetricValue {
    pub fn within_bound(&self) -> bool {
        self.value <= self.bound
    }
}

/// Upper estimate for the area-to-boundary constant at exponent `p`.
pub fn isoperimetric_bound(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("isoperimetric bound needs p > 1, got {p}")));
    }
    Ok(if p >= 2.0 {
        (SQRT_2 + 1.0) / SQRT_2
    } else {
        ((PI / (4.0 * p)).cos() / (PI / (2.0 * p)).cos()).powf(2.0 * p)
    })
}

/// `(1/π)∫_D |Pf|^{2p} dA / (mean |f|^p)²`, with `Pf` the Poisson extension.
///
/// Radial integral by `n_r`-point Gauss–Legendre with weight `2r`; each circle
/// by the trapezoid rule on the signal's own grid.
pub fn isoperimetric_ratio(f: &CircleSignal, p: f64, n_r: usize) -> Result<IsoperimetricValue> {
    let bound = isoperimetric_bound(p)?;
    if n_r == 0 {
        return Err(Error::Size("need at least one radial node".into()));
    }
    let boundary = lp_norm(f, p).powf(p);
    if !(boundary > 0.0) {
        return Err(Error::Domain("isoperimetric ratio of a zero signal".into()));
    }
    let (rs, ws) = gauss_legendre_on(n_r, 0.0, 1.0);
    let mut area = 0.0;
    for (&r, &w) in rs.iter().zip(&ws) {
        let ext = poisson_extend(f, r)?;
        area += w * 2.0 * r * lp_norm(&ext, 2.0 * p).powf(2.0 * p);
    }
    Ok(IsoperimetricValue { value: area / (boundary * boundary), bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::signal::GridOffset;
    use num_complex::Complex64;

    fn monomial(n: i64) -> CircleSignal {
        CircleSignal::from_coefficients(256, GridOffset::Zero, &[(n, Complex64::new(1.0, 0.0))]).unwrap()
    }

    #[test]
    fn constant_gives_one() {
        for p in [1.5, 2.0, 3.0] {
            let v = isoperimetric_ratio(&monomial(0), p, 32).unwrap();
            assert!((v.value - 1.0).abs() < 1e-14);
            assert!(v.within_bound());
        }
    }

    #[test]
    fn monomials() {
        assert!((isoperimetric_ratio(&monomial(1), 2.0, 32).unwrap().value - 1.0 / 3.0).abs() < 1e-13);
        for p in [2.0, 3.0] {
            for n in 1..=3 {
                let v = isoperimetric_ratio(&monomial(n), p, 32).unwrap();
                assert!((v.value - 1.0 / (p * n as f64 + 1.0)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bounds() {
        assert!((isoperimetric_bound(2.0).unwrap() - 1.7071067811865475).abs() < 1e-15);
        assert!(isoperimetric_bound(1.5).unwrap() > 1.0);
        assert!(isoperimetric_bound(1.0).is_err());
    }
}
