//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! `cargo test --test acceptance` (add `--release` for the fastest run).
//! Exits nonzero if any criterion fails in a way that is not the known
//! counterexample to the sine-ratio lower bound for 2 < p < 4.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riesz_sharp::constants::{
    a_constant, critical_order, k_value, maximize_k, sharp_lower_bound, CosSign, ExponentPair, SharpConstantBundle,
};
use riesz_sharp::lemmas::falsify::falsify_beyond_cutoff;
use riesz_sharp::lemmas::hyperbolic::g_function;
use riesz_sharp::lemmas::implicit::descent_margin;
use riesz_sharp::lemmas::run_applicable;
use riesz_sharp::lemmas::trig::{cosh_cos_margin, e_p, sine_ratio_lower_margin, sine_ratio_upper_margin};
use riesz_sharp::minorant::{verify_region, Branch, GridSpec, Master};
use riesz_sharp::spectral::extremal::projection_discrepancy;
use riesz_sharp::spectral::{
    harmonic_conjugate, isoperimetric_bound, isoperimetric_ratio, lp_norm, project_minus, project_plus,
    projection_ratio, random_band_limited, sharpness_sweep, CircleSignal, ExtremalFamilyParams, GridOffset,
};
use std::f64::consts::{PI, SQRT_2};
use std::process::Command;
use std::time::{Duration, Instant};

enum Status {
    Pass,
    Fail,
    /// Fails exactly as the mathematics predicts; not counted against the run.
    KnownFail,
}

struct Outcome {
    status: Status,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Self { status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn closed_form(p: f64, s: f64) -> f64 {
    2f64.powf(1.0 / s) / (2.0 * (PI / (2.0 * p)).sin())
}

fn c1_closed_form() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for p in [2.0, 2.5, 3.0, 4.0, 8.0] {
        for s in [1.0, 2.0, critical_order(p).unwrap()] {
            worst = worst.max(rel(a_constant(p, s).unwrap(), closed_form(p, s)));
        }
    }
    let t = start.elapsed();
    Outcome::check(worst <= 1e-10 && t < Duration::from_secs(1), format!("15 pairs, max rel err {worst:.1e}, {t:.2?}"))
}

fn c2_kalaj_point() -> Outcome {
    let a = a_constant(4.0, 2.0).unwrap();
    let exact = 1.0 / (SQRT_2 * (PI / 8.0).sin());
    Outcome::check(rel(a, exact) <= 1e-10, format!("A(4,2) = {a:.15} vs {exact:.15}"))
}

fn c3_large_s() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for p in [2.5, 3.0, 4.0] {
        worst = worst.max(rel(a_constant(p, 1e4).unwrap(), 1.0 / (PI / p).sin()));
    }
    let t = start.elapsed();
    Outcome::check(worst <= 1e-3 && t < Duration::from_secs(1), format!("max rel gap to 1/sin(pi/p) {worst:.2e}, {t:.2?}"))
}

fn c4_sharpness_consistency() -> Outcome {
    let mut worst = 0.0f64;
    let mut n = 0;
    for p in [2.5, 3.0, 4.0, 6.0, 8.0] {
        let star = critical_order(p).unwrap();
        for s in [1.0, 2.0, star, 1.5 * star] {
            let b = SharpConstantBundle::compute(p, s).unwrap();
            // C normalized to the |z + conj w|^p coefficient
            let c_l1 = b.c_ps / 2f64.powf(0.5 * p);
            let formula = 2f64.powf(1.0 / s) * c_l1.powf(1.0 / p);
            worst = worst.max(rel(sharp_lower_bound(p, s).unwrap().value, formula));
            n += 1;
        }
    }
    Outcome::check(worst <= 1e-10 && n == 20, format!("{n} pairs, max rel err {worst:.1e}"))
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(f)
}

fn c5_master_grids() -> Outcome {
    let mut cases: Vec<(Branch, ExponentPair)> = Vec::new();
    for p in [2.0, 2.5, 3.0, 4.0, 6.0, 8.0] {
        cases.push((Branch::CriticalGe2, ExponentPair::critical(p).unwrap()));
    }
    for (p, s) in [(3.0, 8.0), (4.0, 10.0), (6.0, 20.0)] {
        cases.push((Branch::SupercriticalGe2, ExponentPair::new(p, s).unwrap()));
    }
    for p in [1.1, 1.25, 4.0 / 3.0] {
        cases.push((Branch::CriticalLt2, ExponentPair::critical(p).unwrap()));
    }
    let mut ok = true;
    let mut notes = Vec::new();
    let mut slowest = Duration::ZERO;
    for (branch, pair) in cases {
        let grid = GridSpec::for_branch(branch, pair.p, 10.0, 2000, 2000);
        let start = Instant::now();
        let r = single_threaded(|| verify_region(branch, pair, grid)).unwrap();
        let t = start.elapsed();
        slowest = slowest.max(t);
        let master = Master::new(branch, pair).unwrap();
        let (dy, dt) = grid.cell();
        let t_zero = PI / pair.p;
        let zero_value = master.phi(master.y_tilde, t_zero);
        let cells_y = (r.argmin.0 - master.y_tilde).abs() / dy;
        let cells_t = (r.argmin.1 - t_zero).abs() / dt;
        let mut here = r.passed() && t < Duration::from_secs(30) && zero_value.abs() <= 1e-10;
        if pair.p == 2.0 {
            // Φ vanishes identically at p = 2, so there is no isolated zero to locate
            here &= r.min_margin.abs() <= 1e-10;
            notes.push("p=2 identically zero".to_string());
        } else {
            here &= cells_t <= 1.0;
            match branch {
                Branch::SupercriticalGe2 => here &= cells_y <= 1.0,
                // the valley y ~ sqrt(π/p − t) is flat: the grid minimum drifts a few y-cells off y = 0
                _ => notes.push(format!("{}@{:.3}: y off by {cells_y:.0} cells", branch.id(), pair.p)),
            }
        }
        if !here {
            notes.push(format!(
                "FAILED {} p={} s={}: min {:e} at {:?}, violations {}, Φ(zero) {:e}, {:.2?}",
                r.check_id, pair.p, pair.s, r.min_margin, r.argmin, r.violations, zero_value, t
            ));
        }
        ok &= here;
    }
    Outcome::check(ok, format!("12 grids of 2000x2000, slowest {slowest:.2?} single-threaded; {}", notes.join("; ")))
}

fn c6_lemma_suite() -> Outcome {
    let mut lattice = Vec::new();
    for p in [2.5, 3.0, 4.0, 5.0, 6.0, 8.0] {
        let star = critical_order(p).unwrap();
        lattice.push((p, star));
        lattice.push((p, 2.0 * star));
    }
    for p in [1.1, 1.2, 1.25, 4.0 / 3.0] {
        lattice.push((p, critical_order(p).unwrap()));
    }
    let mut checks = 0;
    let mut unexpected = Vec::new();
    let mut known = Vec::new();
    for &(p, s) in &lattice {
        for r in run_applicable(p, s, 20_000).unwrap() {
            checks += 1;
            if r.passed {
                continue;
            }
            // the sine-ratio lower bound is false on 2 < p < 4: its margin tends to p/2 − E_p < 0 as t → 0
            let predicted = 0.5 * p - e_p(p);
            if r.lemma_id == "lemma3-sine-ratio-lower" && p > 2.0 && p < 4.0 && (r.min_margin - predicted).abs() < 1e-6 {
                known.push(format!("p={p}: {:.4}", r.min_margin));
            } else {
                unexpected.push(format!("{} at p={p}, s={s:.4}: {:e}", r.lemma_id, r.min_margin));
            }
        }
    }
    // equality points
    let mut worst_eq = cosh_cos_margin(0.0).abs();
    for &(p, s) in &lattice {
        if p >= 2.0 {
            worst_eq = worst_eq.max(sine_ratio_lower_margin(PI / p, p).abs());
            if s == critical_order(p).unwrap() {
                worst_eq = worst_eq.max((0.5 * s - g_function(0.0, p, s)).abs());
                worst_eq = worst_eq.max((0.5 * s - g_function(1e-6, p, s)).abs());
            }
            let branch = if s == critical_order(p).unwrap() { Branch::CriticalGe2 } else { Branch::SupercriticalGe2 };
            let m = Master::new(branch, ExponentPair::new(p, s).unwrap()).unwrap();
            worst_eq = worst_eq.max(descent_margin(&m, PI / p, m.y_tilde).abs());
        } else {
            worst_eq = worst_eq.max(sine_ratio_upper_margin(PI / p, p).abs());
        }
    }
    let detail = format!(
        "{checks} checks over {} (p, s); equality margins max {worst_eq:.1e}; sine-ratio lower bound false at {}",
        lattice.len(),
        known.join(", ")
    );
    if !unexpected.is_empty() || worst_eq > 1e-8 {
        return Outcome::check(false, format!("{detail}; unexpected: {}", unexpected.join("; ")));
    }
    // every other check passes; the known counterexample must appear at p = 2.5 and p = 3 for both orders
    if known.len() == 4 {
        Outcome { status: Status::KnownFail, detail }
    } else {
        Outcome::check(false, format!("{detail}; expected 4 known failures"))
    }
}

fn c7_falsification() -> Outcome {
    let f = falsify_beyond_cutoff(1.5, critical_order(1.5).unwrap()).unwrap();
    let m = maximize_k(3.0, 8.0).unwrap();
    let y = m.y_tilde.unwrap_or(0.0);
    let excess = k_value(y, 3.0, 8.0, CosSign::MinusCos).unwrap() - k_value(0.0, 3.0, 8.0, CosSign::MinusCos).unwrap();
    Outcome::check(
        f.found && f.value < -1e-6 && y > 0.0 && excess > 1e-3,
        format!("p=1.5: Φ = {:.3e} at {:?}; (3,8): y~ = {y:.6}, K(y~) - K(0) = {excess:.4}", f.value, f.witness),
    )
}

fn c8_spectral_identities() -> Outcome {
    let n = 1 << 12;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut parseval, mut roundtrip, mut split) = (0.0f64, 0.0f64, 0.0f64);
    let mut exact = true;
    for _ in 0..100 {
        let samples: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let f = CircleSignal::from_samples(samples.clone(), GridOffset::Zero).unwrap();
        let back = riesz_sharp::spectral::fourier_synthesize(f.spectrum(), GridOffset::Zero).unwrap();
        let scale = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        roundtrip = roundtrip.max(back.iter().zip(&samples).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale);
        let energy: f64 = f.spectrum().iter().map(|c| c.norm_sqr()).sum();
        parseval = parseval.max(rel(energy, lp_norm(&f, 2.0).powi(2)));
        let (pp, pm) = (project_plus(&f), project_minus(&f));
        split = split.max(rel(lp_norm(&pp, 2.0).powi(2) + lp_norm(&pm, 2.0).powi(2), lp_norm(&f, 2.0).powi(2)));
        exact &= pp.spectrum().iter().zip(pm.spectrum()).zip(f.spectrum()).all(|((a, b), c)| a + b == *c);
        exact &= project_plus(&pp).spectrum() == pp.spectrum();
        exact &= project_minus(&pm).spectrum() == pm.spectrum();
        exact &= project_minus(&pp).spectrum().iter().all(|c| c.norm() == 0.0);
        // (f + i f~)/2 = P+f − f^(0)/2
        let fc = harmonic_conjugate(&f);
        let i = Complex64::new(0.0, 1.0);
        exact &= (0..n).all(|k| {
            let lhs = 0.5 * (f.spectrum()[k] + i * fc.spectrum()[k]);
            let rhs = pp.spectrum()[k] - if k == 0 { 0.5 * f.spectrum()[0] } else { Complex64::new(0.0, 0.0) };
            (lhs - rhs).norm() <= 1e-15 * f.spectrum()[k].norm().max(1e-300) + 1e-18
        });
    }
    Outcome::check(
        exact && parseval <= 1e-10 && split <= 1e-10 && roundtrip <= 1e-12,
        format!("100 signals, N=4096: exact spectral identities {exact}, Parseval {parseval:.1e}, split {split:.1e}, round trip {roundtrip:.1e}"),
    )
}

fn c9_norm_bound() -> Outcome {
    let pairs = [(2.0, 2.0), (4.0, 2.0), (4.0, critical_order(4.0).unwrap()), (1.25, critical_order(1.25).unwrap())];
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, s) in pairs {
        let a = a_constant(p, s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let f = random_band_limited(&mut rng, 1 << 12, 32, GridOffset::Zero).unwrap();
            worst = worst.max(projection_ratio(&f, p, s).unwrap());
        }
        ok &= worst <= a * (1.0 + 1e-6);
        parts.push(format!("({p},{s:.3}) max {worst:.4} <= A {a:.4}"));
    }
    let one = Complex64::new(1.0, 0.0);
    let f = CircleSignal::from_coefficients(1 << 12, GridOffset::Zero, &[(-1, one), (1, one)]).unwrap();
    let eq = projection_ratio(&f, 2.0, 2.0).unwrap();
    ok &= (eq - 1.0).abs() <= 1e-12;
    Outcome::check(ok, format!("{}; zeta+conj(zeta) ratio {eq:.15}", parts.join(", ")))
}

fn c10_extremal_projections() -> Outcome {
    let mut worst = 0.0f64;
    for (alpha, beta) in [(1.0, 0.0), (0.8, 0.3), (0.0, 1.0)] {
        worst = worst.max(projection_discrepancy(&ExtremalFamilyParams::new(0.2, alpha, beta, 0.95), 1 << 14).unwrap());
    }
    Outcome::check(worst <= 1e-6, format!("gamma=0.2, r=0.95, N=2^14: max relative L2 gap {worst:.1e}"))
}

fn c11_sharpness_sweep() -> Outcome {
    let sw = sharpness_sweep(3.0, 2.0, &[0.27, 0.30, 0.32], 0.0, 1 << 16).unwrap();
    let ratios: Vec<String> = sw.rows.iter().map(|r| format!("{:.5}", r.ratio)).collect();
    let grid: Vec<String> = sw.rows.iter().map(|r| format!("{:.4}", r.grid_ratio)).collect();
    Outcome::check(
        sw.strictly_increasing() && sw.last_fraction() >= 0.9 && (sw.target - SQRT_2).abs() < 1e-12,
        format!(
            "ratios {} -> {:.4} of target sqrt 2 (uniform-grid ratios {} for reference)",
            ratios.join(", "),
            sw.last_fraction(),
            grid.join(", ")
        ),
    )
}

fn c12_isoperimetric() -> Outcome {
    let mut worst = 0.0f64;
    let mut ok = true;
    let one = Complex64::new(1.0, 0.0);
    for p in [2.0, 3.0] {
        for n in 1..=3 {
            let f = CircleSignal::from_coefficients(1024, GridOffset::Zero, &[(n, one)]).unwrap();
            let v = isoperimetric_ratio(&f, p, 32).unwrap();
            worst = worst.max((v.value - 1.0 / (p * n as f64 + 1.0)).abs());
            ok &= v.within_bound();
        }
        let c = CircleSignal::from_coefficients(1024, GridOffset::Zero, &[(0, one)]).unwrap();
        let v = isoperimetric_ratio(&c, p, 32).unwrap();
        ok &= (v.value - 1.0).abs() <= 1e-14 && v.within_bound();
        ok &= (isoperimetric_bound(p).unwrap() - (SQRT_2 + 1.0) / SQRT_2).abs() < 1e-15;
    }
    Outcome::check(ok && worst <= 1e-8, format!("max |value - 1/(pn+1)| {worst:.1e}; constant signal gives 1"))
}

fn run_bin(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_riesz")).args(args).output().expect("riesz binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn c13_reproducibility(total: Duration) -> Outcome {
    let runs: [&[&str]; 3] = [
        &["experiment", "ratio", "--p", "4", "--s", "2", "--seed", "7"],
        &["verify", "all", "--p", "4,1.25", "--grid-ny", "300", "--grid-nt", "300", "--format", "json"],
        &["experiment", "isoperimetric", "--seed", "3", "--format", "json"],
    ];
    let mut same = true;
    for args in runs {
        let (c1, a) = run_bin(args);
        let (c2, b) = run_bin(args);
        same &= c1 == 0 && c2 == 0 && a == b && !a.is_empty();
    }
    Outcome::check(
        same && total < Duration::from_secs(600),
        format!("byte-identical reports over 3 commands: {same}; acceptance run {total:.1?}"),
    )
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("closed-form constants", c1_closed_form),
        ("A(4,2) point", c2_kalaj_point),
        ("large-s limit", c3_large_s),
        ("lower bound equals A", c4_sharpness_consistency),
        ("master inequality grids", c5_master_grids),
        ("lemma suite", c6_lemma_suite),
        ("falsification", c7_falsification),
        ("spectral identities", c8_spectral_identities),
        ("empirical norm bound", c9_norm_bound),
        ("extremal closed-form projections", c10_extremal_projections),
        ("sharpness sweep", c11_sharpness_sweep),
        ("isoperimetric ratio", c12_isoperimetric),
    ];
    let mut failed = 0;
    let mut report = |k: usize, name: &str, o: Outcome, t: Duration| {
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::KnownFail => "FAIL (known counterexample, see README)",
        };
        println!("criterion {k:>2} {tag} [{name}] ({t:.2?}) {}", o.detail);
    };
    for (k, (name, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let o = f();
        report(k + 1, name, o, t.elapsed());
    }
    let t = Instant::now();
    let o = c13_reproducibility(start.elapsed());
    report(13, "reproducibility", o, t.elapsed());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
