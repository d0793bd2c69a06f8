//! Gauss–Legendre and double-exponential (tanh-sinh) rules.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    (x.iter().map(|&xi| c + h * xi).collect(), w.iter().map(|&wi| h * wi).collect())
}

/// Tanh-sinh quadrature of `f` over the open interval `(a, b)`.
///
/// Integrable endpoint singularities are fine: nodes are computed from
/// the nearer endpoint so they never collapse onto it. Halves the step
/// until two levels agree to `rel_tol` (at most `max_level` halvings).
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, max_level: u32) -> f64 {
    let half = 0.5 * (b - a);
    let eval = |u: f64| -> f64 {
        let v = 0.5 * PI * u.sinh();
        let ch = v.cosh();
        if !ch.is_finite() {
            return 0.0;
        }
        let w = 0.5 * PI * u.cosh() / (ch * ch) * half;
        // distance of the node from a and from b
        let da = 2.0 * half / (1.0 + (-2.0 * v).exp());
        let db = 2.0 * half / (1.0 + (2.0 * v).exp());
        let t = if da <= db { a + da } else { b - db };
        if w == 0.0 || t <= a || t >= b {
            return 0.0;
        }
        w * f(t)
    };
    let umax = 6.5;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= umax {
        let u = k as f64 * h;
        sum += eval(u) + eval(-u);
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..max_level {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= umax {
            let u = k as f64 * h;
            sum += eval(u) + eval(-u);
            k += 2;
        }
        let cur = sum * h;
        if (cur - prev).abs() <= rel_tol * cur.abs() {
            return cur;
        }
        prev = cur;
    }
    prev
}
