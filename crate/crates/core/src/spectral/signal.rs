//! Circle functions as uniform samples paired with their Fourier coefficients.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::Rng;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Node offset `σ`: samples sit at `t_j = 2π(j + σ)/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridOffset {
    Zero,
    Half,
}

impl GridOffset {
    pub fn sigma(self) -> f64 {
        match self {
            GridOffset::Zero => 0.0,
            GridOffset::Half => 0.5,
        }
    }
}

/// Signed frequency of FFT slot `k` in a length-`n` transform.
#[inline]
pub fn freq(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

fn check_len(n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::Size(format!("N must be a power of two >= 2, got {n}")));
    }
    Ok(())
}

/// `f̂(n) = (1/N) Σ_j f(t_j) e^{−i n t_j}` in FFT order.
pub fn fourier_analyze(samples: &[Complex64], offset: GridOffset) -> Result<Vec<Complex64>> {
    let n = samples.len();
    check_len(n)?;
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let sigma = offset.sigma();
    for (k, c) in buf.iter_mut().enumerate() {
        *c *= scale;
        if sigma != 0.0 {
            *c *= Complex64::from_polar(1.0, -TAU * sigma * freq(k, n) as f64 / n as f64);
        }
    }
    Ok(buf)
}

/// `f(t_j) = Σ_n f̂(n) e^{i n t_j}`, the inverse of [`fourier_analyze`].
pub fn fourier_synthesize(spectrum: &[Complex64], offset: GridOffset) -> Result<Vec<Complex64>> {
    let n = spectrum.len();
    check_len(n)?;
    let sigma = offset.sigma();
    let mut buf: Vec<Complex64> = spectrum
        .iter()
        .enumerate()
        .map(|(k, &c)| if sigma != 0.0 { c * Complex64::from_polar(1.0, TAU * sigma * freq(k, n) as f64 / n as f64) } else { c })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    Ok(buf)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleSignal {
    samples: Vec<Complex64>,
    /// FFT order: slot `k` holds the coefficient of frequency `freq(k, N)`.
    spectrum: Vec<Complex64>,
    offset: GridOffset,
}

impl CircleSignal {
    pub fn from_samples(samples: Vec<Complex64>, offset: GridOffset) -> Result<Self> {
        let spectrum = fourier_analyze(&samples, offset)?;
        Ok(Self { samples, spectrum, offset })
    }

    /// Spectrum given in FFT order.
    pub fn from_spectrum(spectrum: Vec<Complex64>, offset: GridOffset) -> Result<Self> {
        let samples = fourier_synthesize(&spectrum, offset)?;
        Ok(Self { samples, spectrum, offset })
    }

    /// Trigonometric polynomial `Σ c_n e^{int}` from `(n, c_n)` pairs.
    pub fn from_coefficients(n: usize, offset: GridOffset, coeffs: &[(i64, Complex64)]) -> Result<Self> {
        check_len(n)?;
        let mut spec = vec![Complex64::new(0.0, 0.0); n];
        for &(m, c) in coeffs {
            if m < -(n as i64) / 2 || m >= n as i64 / 2 {
                return Err(Error::Size(format!("frequency {m} does not fit N = {n}")));
            }
            spec[m.rem_euclid(n as i64) as usize] += c;
        }
        Self::from_spectrum(spec, offset)
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(n: usize, offset: GridOffset, f: F) -> Result<Self> {
        check_len(n)?;
        let samples = (0..n).map(|j| f(node(j, n, offset))).collect();
        Self::from_samples(samples, offset)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn offset(&self) -> GridOffset {
        self.offset
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Coefficients in FFT order.
    pub fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    /// `f̂(n)` for `−N/2 <= n < N/2`; zero outside.
    pub fn coeff(&self, n: i64) -> Complex64 {
        let len = self.len() as i64;
        if n < -len / 2 || n >= len / 2 {
            return Complex64::new(0.0, 0.0);
        }
        self.spectrum[n.rem_euclid(len) as usize]
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|j| node(j, self.len(), self.offset)).collect()
    }

    /// New signal with each coefficient multiplied by `m(n)`.
    pub fn multiply<F: Fn(i64) -> Complex64>(&self, m: F) -> Self {
        let n = self.len();
        let spec = self.spectrum.iter().enumerate().map(|(k, &c)| c * m(freq(k, n))).collect();
        Self::from_spectrum(spec, self.offset).expect("length already validated")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_spectrum(other, |a, b| a + b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.multiply(|_| c)
    }

    fn zip_spectrum<F: Fn(Complex64, Complex64) -> Complex64>(&self, other: &Self, f: F) -> Result<Self> {
        if self.len() != other.len() || self.offset != other.offset {
            return Err(Error::Size("signals live on different grids".into()));
        }
        let spec = self.spectrum.iter().zip(&other.spectrum).map(|(&a, &b)| f(a, b)).collect();
        Self::from_spectrum(spec, self.offset)
    }
}

/// `t_j = 2π(j + σ)/N`.
pub fn node(j: usize, n: usize, offset: GridOffset) -> f64 {
    TAU * (j as f64 + offset.sigma()) / n as f64
}

/// Coefficients `n >= 0`, the analytic part (constant included).
pub fn project_plus(f: &CircleSignal) -> CircleSignal {
    f.multiply(|n| Complex64::new(if n >= 0 { 1.0 } else { 0.0 }, 0.0))
}

/// Coefficients `n <= −1`.
pub fn project_minus(f: &CircleSignal) -> CircleSignal {
    f.multiply(|n| Complex64::new(if n < 0 { 1.0 } else { 0.0 }, 0.0))
}

/// Multiplier `−i sgn(n)`.
pub fn harmonic_conjugate(f: &CircleSignal) -> CircleSignal {
    f.multiply(|n| Complex64::new(0.0, -(n.signum() as f64)))
}

/// `(mean |f|^p)^{1/p}` over the nodes.
pub fn lp_norm(f: &CircleSignal, p: f64) -> f64 {
    lp_norm_samples(f.samples().iter().map(|z| z.norm()), p)
}

pub(crate) fn lp_norm_samples<I: ExactSizeIterator<Item = f64>>(mags: I, p: f64) -> f64 {
    let n = mags.len() as f64;
    (mags.map(|m| m.powf(p)).sum::<f64>() / n).powf(1.0 / p)
}

/// `(|a|^s + |b|^s)^{1/s}` without overflow.
#[inline]
pub fn aggregate_pair(a: f64, b: f64, s: f64) -> f64 {
    let m = a.max(b);
    if m == 0.0 {
        return 0.0;
    }
    m * (1.0 + (a.min(b) / m).powf(s)).powf(1.0 / s)
}

/// Pointwise `(|a|^s + |b|^s)^{1/s}` as a real-valued signal.
pub fn aggregate_s(a: &CircleSignal, b: &CircleSignal, s: f64) -> Result<CircleSignal> {
    if a.len() != b.len() || a.offset != b.offset {
        return Err(Error::Size("aggregate_s needs matching grids".into()));
    }
    if !(s > 0.0) {
        return Err(Error::Domain(format!("s must be positive, got {s}")));
    }
    let samples = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| Complex64::new(aggregate_pair(x.norm(), y.norm(), s), 0.0))
        .collect();
    CircleSignal::from_samples(samples, a.offset)
}

/// `‖(|P₊f|^s + |P₋f|^s)^{1/s}‖_p / ‖f‖_p`.
pub fn projection_ratio(f: &CircleSignal, p: f64, s: f64) -> Result<f64> {
    let (plus, minus) = (project_plus(f), project_minus(f));
    aggregate_ratio(f, &plus, &minus, p, s)
}

/// The same ratio through the conjugate function: `(f ± i f̃)/2` in place of `P±f`.
pub fn conjugate_route_ratio(f: &CircleSignal, p: f64, s: f64) -> Result<f64> {
    let fc = harmonic_conjugate(f);
    let i = Complex64::new(0.0, 1.0);
    let a = f.add(&fc.scale(i))?.scale(Complex64::new(0.5, 0.0));
    let b = f.add(&fc.scale(-i))?.scale(Complex64::new(0.5, 0.0));
    aggregate_ratio(f, &a, &b, p, s)
}

fn aggregate_ratio(f: &CircleSignal, a: &CircleSignal, b: &CircleSignal, p: f64, s: f64) -> Result<f64> {
    let den = lp_norm(f, p);
    if !(den > 0.0) {
        return Err(Error::Domain("ratio of a zero signal".into()));
    }
    let mags = a.samples().iter().zip(b.samples()).map(|(x, y)| aggregate_pair(x.norm(), y.norm(), s));
    Ok(lp_norm_samples(mags.collect::<Vec<_>>().into_iter(), p) / den)
}

/// `Σ f̂(n) r^{|n|} e^{inθ}`.
pub fn poisson_extend(f: &CircleSignal, r: f64) -> Result<CircleSignal> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("Poisson extension needs 0 <= r < 1, got {r}")));
    }
    Ok(f.multiply(|n| Complex64::new(r.powi(n.unsigned_abs() as i32), 0.0)))
}

/// Random trigonometric polynomial with frequencies in `[−band, band]` and
/// coefficients uniform in the unit square.
pub fn random_band_limited<R: Rng>(rng: &mut R, n: usize, band: i64, offset: GridOffset) -> Result<CircleSignal> {
    let coeffs: Vec<(i64, Complex64)> = (-band..=band)
        .map(|m| (m, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    CircleSignal::from_coefficients(n, offset, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn naive_dft(x: &[Complex64], sigma: f64) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                let m = freq(k, n) as f64;
                x.iter()
                    .enumerate()
                    .map(|(j, &v)| v * Complex64::from_polar(1.0, -m * TAU * (j as f64 + sigma) / n as f64))
                    .sum::<Complex64>()
                    / n as f64
            })
            .collect()
    }

    #[test]
    fn matches_naive_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: Vec<Complex64> = (0..64).map(|_| c(rng.gen(), rng.gen())).collect();
        for off in [GridOffset::Zero, GridOffset::Half] {
            let fast = fourier_analyze(&x, off).unwrap();
            let slow = naive_dft(&x, off.sigma());
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn transform_examples() {
        let one = CircleSignal::from_fn(16, GridOffset::Zero, |_| c(1.0, 0.0)).unwrap();
        assert!((one.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(one.spectrum()[1..].iter().all(|z| z.norm() < 1e-15));
        let e = CircleSignal::from_fn(16, GridOffset::Half, |t| Complex64::from_polar(1.0, t)).unwrap();
        assert!((e.coeff(1) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(fourier_analyze(&[c(0.0, 0.0); 12], GridOffset::Zero).is_err());
    }

    #[test]
    fn projection_examples() {
        let one = CircleSignal::from_coefficients(16, GridOffset::Zero, &[(0, c(1.0, 0.0))]).unwrap();
        assert_eq!(project_plus(&one).coeff(0), c(1.0, 0.0));
        assert_eq!(project_minus(&one).coeff(0), c(0.0, 0.0));
        let f = CircleSignal::from_coefficients(16, GridOffset::Zero, &[(-1, c(1.0, 0.0)), (0, c(2.0, 0.0)), (1, c(3.0, 0.0))]).unwrap();
        let n2 = |g: &CircleSignal| lp_norm(g, 2.0).powi(2);
        assert!((n2(&f) - 14.0).abs() < 1e-12);
        assert!((n2(&project_plus(&f)) - 13.0).abs() < 1e-12);
        assert!((n2(&project_minus(&f)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conjugate_examples() {
        let f = CircleSignal::from_fn(32, GridOffset::Zero, |t| c(2.0 * t.cos(), 0.0)).unwrap();
        let g = harmonic_conjugate(&f);
        for (z, t) in g.samples().iter().zip(f.nodes()) {
            assert!((z - c(2.0 * t.sin(), 0.0)).norm() < 1e-14);
        }
        let f = CircleSignal::from_fn(32, GridOffset::Zero, |t| c(2.0 * t.sin(), 0.0)).unwrap();
        for (z, t) in harmonic_conjugate(&f).samples().iter().zip(f.nodes()) {
            assert!((z - c(-2.0 * t.cos(), 0.0)).norm() < 1e-14);
        }
        let one = CircleSignal::from_fn(32, GridOffset::Zero, |_| c(1.0, 0.0)).unwrap();
        assert!(harmonic_conjugate(&one).samples().iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn norm_examples() {
        let one = CircleSignal::from_fn(64, GridOffset::Zero, |_| c(1.0, 0.0)).unwrap();
        for p in [1.0, 2.0, 3.7] {
            assert!((lp_norm(&one, p) - 1.0).abs() < 1e-15);
        }
        let f = CircleSignal::from_fn(64, GridOffset::Zero, |t| c(2.0 * t.cos(), 0.0)).unwrap();
        assert!((lp_norm(&f, 2.0) - 2f64.sqrt()).abs() < 1e-14);
        assert!((lp_norm(&f, 4.0) - 6f64.powf(0.25)).abs() < 1e-14);
    }

    #[test]
    fn aggregate_examples() {
        let one = CircleSignal::from_fn(8, GridOffset::Zero, |_| c(1.0, 0.0)).unwrap();
        let zero = CircleSignal::from_fn(8, GridOffset::Zero, |_| c(0.0, 0.0)).unwrap();
        let a = aggregate_s(&one, &one, 2.0).unwrap();
        assert!(a.samples().iter().all(|z| (z.re - 2f64.sqrt()).abs() < 1e-15));
        let a = aggregate_s(&one, &zero, 3.0).unwrap();
        assert!(a.samples().iter().all(|z| (z.re - 1.0).abs() < 1e-15));
        let a = aggregate_s(&one, &one, 64.0).unwrap();
        assert!(a.samples().iter().all(|z| (z.re - 2f64.powf(1.0 / 64.0)).abs() < 1e-15));
        let other = CircleSignal::from_fn(16, GridOffset::Zero, |_| c(0.0, 0.0)).unwrap();
        assert!(aggregate_s(&one, &other, 2.0).is_err());
    }

    #[test]
    fn ratio_examples() {
        let f = CircleSignal::from_coefficients(64, GridOffset::Zero, &[(-1, c(1.0, 0.0)), (1, c(1.0, 0.0))]).unwrap();
        assert!((projection_ratio(&f, 2.0, 2.0).unwrap() - 1.0).abs() < 1e-12);
        let one = CircleSignal::from_coefficients(64, GridOffset::Zero, &[(0, c(1.0, 0.0))]).unwrap();
        assert!((projection_ratio(&one, 3.0, 2.0).unwrap() - 1.0).abs() < 1e-14);
        let zero = CircleSignal::from_coefficients(64, GridOffset::Zero, &[]).unwrap();
        assert!(projection_ratio(&zero, 2.0, 2.0).is_err());
    }

    #[test]
    fn poisson_examples() {
        let one = CircleSignal::from_coefficients(32, GridOffset::Zero, &[(0, c(1.0, 0.0))]).unwrap();
        assert!(poisson_extend(&one, 0.7).unwrap().samples().iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-15));
        let z = CircleSignal::from_coefficients(32, GridOffset::Half, &[(1, c(1.0, 0.0))]).unwrap();
        let e = poisson_extend(&z, 0.5).unwrap();
        for (v, t) in e.samples().iter().zip(e.nodes()) {
            assert!((v - Complex64::from_polar(0.5, t)).norm() < 1e-15);
        }
        let real = CircleSignal::from_fn(32, GridOffset::Zero, |t| c((3.0 * t).cos() + t.sin(), 0.0)).unwrap();
        assert!(poisson_extend(&real, 0.3).unwrap().samples().iter().all(|v| v.im.abs() < 1e-15));
        assert!(poisson_extend(&one, 1.0).is_err());
    }
}
