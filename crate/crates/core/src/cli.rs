//! Command-line front end shared by the `riesz` binary and the tests.
//!
//! Exit codes: `0` every check passed, `1` a check failed, `2` the
//! arguments or parameters were rejected before anything was computed.

use crate::constants::{a_constant, critical_order, sharp_lower_bound, ExponentPair, SharpConstantBundle, EPS_CRIT};
use crate::error::{Error, Result};
use crate::lemmas::{self, falsify_beyond_cutoff, falsify_supercritical, Falsification, LemmaCheckResult};
use crate::minorant::{subharmonic_mean_check, verify_region_with, Branch, GridSpec, VerificationReport, MARGIN_TOL};
use crate::report::{Cell, Format, Table};
use crate::spectral::{
    conjugate_route_ratio, isoperimetric_ratio, projection_ratio, random_band_limited, sharpness_sweep, CircleSignal,
    GridOffset,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

/// Relative slack when comparing an empirical ratio with `A`.
pub const RATIO_SLACK: f64 = 1e-6;
/// Relative tolerance of the tabulated lower bound against `A`.
pub const LOWER_BOUND_TOL: f64 = 1e-10;
/// Radial Gauss–Legendre nodes of the isoperimetric experiment.
pub const RADIAL_NODES: usize = 32;
/// Frequencies `|n| <= BAND` in random test signals.
pub const BAND: i64 = 32;

const FALSIFY_IDS: [&str; 2] = ["falsify-p-gt-4-3", "falsify-supercritical"];
const MASTER_IDS: [&str; 3] = ["master-critical-ge2", "master-supercritical-ge2", "master-critical-lt2"];

#[derive(Parser, Debug, Clone)]
#[command(name = "riesz", version, about = "Sharp Riesz-projection constants and their numerical checks")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Exponents p (comma list).
    #[arg(long = "p", value_delimiter = ',', global = true)]
    pub p: Vec<f64>,
    /// Aggregation orders s (comma list); defaults to the critical order of each p.
    #[arg(long = "s", value_delimiter = ',', global = true)]
    pub s: Vec<f64>,
    /// Grid nodes in y.
    #[arg(long = "grid-ny", default_value_t = 2000, global = true)]
    pub grid_ny: usize,
    /// Grid nodes in t; also the sample count of one-dimensional lemma sweeps.
    #[arg(long = "grid-nt", default_value_t = 2000, global = true)]
    pub grid_nt: usize,
    /// Right end of the y range.
    #[arg(long = "ymax", default_value_t = 10.0, global = true)]
    pub y_max: f64,
    /// Samples per circle signal (power of two).
    #[arg(long = "N", default_value_t = 4096, global = true)]
    pub n: usize,
    #[arg(long, default_value_t = 7, global = true)]
    pub seed: u64,
    /// Margin tolerance override.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Random signals per (p, s) in the ratio experiment.
    #[arg(long, default_value_t = 200, global = true)]
    pub trials: usize,
    /// Exponents γ of the sharpness sweep; defaults to 0.81/p, 0.9/p, 0.96/p.
    #[arg(long, value_delimiter = ',', global = true)]
    pub gammas: Vec<f64>,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Tabulate ỹ, C, D, A and the lower bound for each (p, s).
    Constants,
    /// Run named checks, or every applicable one with `all` (the default).
    Verify { ids: Vec<String> },
    /// Plot-ready experiments.
    Experiment {
        #[arg(value_enum)]
        kind: ExperimentKind,
    },
    /// Search for counterexamples past the cutoffs. Without --s the order is
    /// sec²(π/2p) for p < 2 and 2·csc²(π/2p) for p >= 2.
    Falsify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentKind {
    Ratio,
    Sharpness,
    Isoperimetric,
}

/// Exit code for an error raised while running a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence(_) | Error::Bracket(_) | Error::WitnessNotFound(_) => 1,
        _ => 2,
    }
}

impl RunConfig {
    fn default_p(&self) -> Vec<f64> {
        if !self.p.is_empty() {
            return self.p.clone();
        }
        match self.command {
            Command::Constants => vec![1.25, 2.0, 3.0, 4.0, 8.0],
            Command::Verify { .. } => vec![3.0],
            Command::Experiment { kind: ExperimentKind::Ratio } => vec![4.0],
            Command::Experiment { kind: ExperimentKind::Sharpness } => vec![3.0],
            Command::Experiment { kind: ExperimentKind::Isoperimetric } => vec![2.0, 3.0],
            Command::Falsify => vec![1.5],
        }
    }

    /// Every `(p, s)` pair of the run, in input order.
    pub fn pairs(&self) -> Result<Vec<(f64, f64)>> {
        let mut out = Vec::new();
        for p in self.default_p() {
            if self.s.is_empty() {
                let star = critical_order(p)?;
                let s = match self.command {
                    Command::Experiment { kind: ExperimentKind::Ratio | ExperimentKind::Sharpness } if p >= 2.0 => 2.0,
                    Command::Falsify if p >= 2.0 => 2.0 * star,
                    _ => star,
                };
                out.push((p, s));
            } else {
                out.extend(self.s.iter().map(|&s| (p, s)));
            }
        }
        Ok(out)
    }

    /// Reject bad parameters before any computation.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Domain(m));
        for &p in &self.default_p() {
            if !(p > 1.0 && p.is_finite()) {
                return bad(format!("--p entries must be finite and exceed 1, got {p}"));
            }
        }
        for &s in &self.s {
            if !(s > 0.0 && s.is_finite()) {
                return bad(format!("--s entries must be finite and positive, got {s}"));
            }
        }
        if self.grid_ny < 2 || self.grid_nt < 2 {
            return bad("grid counts must be at least 2".into());
        }
        if !(self.y_max > 0.0 && self.y_max.is_finite()) {
            return bad(format!("--ymax must be positive, got {}", self.y_max));
        }
        if self.n < 2 || !self.n.is_power_of_two() {
            return Err(Error::Size(format!("--N must be a power of two, got {}", self.n)));
        }
        if let Some(t) = self.tol {
            if !(t >= 0.0 && t.is_finite()) {
                return bad(format!("--tol must be nonnegative, got {t}"));
            }
        }
        if self.trials == 0 {
            return bad("--trials must be positive".into());
        }
        if let Command::Verify { ids } = &self.command {
            for id in ids {
                if !is_known_id(id) {
                    return Err(Error::Unsupported(format!("unknown check id {id}")));
                }
            }
        }
        Ok(())
    }
}

fn is_known_id(id: &str) -> bool {
    id == "all"
        || id == "subharmonic-mean"
        || MASTER_IDS.contains(&id)
        || FALSIFY_IDS.contains(&id)
        || lemmas::known_ids().contains(&id)
}

/// Master-function branch proven at `(p, s)`, if any.
pub fn master_branch(p: f64, s: f64) -> Result<Option<Branch>> {
    let star = critical_order(p)?;
    Ok(if p >= 2.0 {
        Some(if s <= star + EPS_CRIT { Branch::CriticalGe2 } else { Branch::SupercriticalGe2 })
    } else if p <= 4.0 / 3.0 + 1e-12 && s <= star + EPS_CRIT {
        Some(Branch::CriticalLt2)
    } else {
        None
    })
}

fn branch_of(id: &str) -> Option<Branch> {
    [Branch::CriticalGe2, Branch::SupercriticalGe2, Branch::CriticalLt2].into_iter().find(|b| b.id() == id)
}

/// Run the configured command; the flag is `true` when every row passed.
pub fn execute(cfg: &RunConfig) -> Result<(Table, bool)> {
    cfg.validate()?;
    match &cfg.command {
        Command::Constants => cmd_constants(cfg),
        Command::Verify { ids } => cmd_verify(cfg, ids),
        Command::Experiment { kind } => cmd_experiment(cfg, *kind),
        Command::Falsify => cmd_falsify(cfg),
    }
}

pub fn cmd_constants(cfg: &RunConfig) -> Result<(Table, bool)> {
    let mut t = Table::new(&[
        "p", "s", "s_star", "regime", "y_tilde", "C", "D", "A", "lower_bound", "lower_bound_y", "consistent",
    ]);
    let mut ok = true;
    for (p, s) in cfg.pairs()? {
        let b = SharpConstantBundle::compute(p, s)?;
        let lb = sharp_lower_bound(p, s)?;
        let consistent = (lb.value - b.a_ps).abs() <= LOWER_BOUND_TOL * b.a_ps;
        ok &= consistent;
        t.push(vec![
            p.into(),
            s.into(),
            critical_order(p)?.into(),
            format!("{:?}", b.pair.regime).to_lowercase().into(),
            b.y_tilde.into(),
            b.c_ps.into(),
            b.d_ps.into(),
            b.a_ps.into(),
            lb.value.into(),
            lb.y_star.into(),
            consistent.into(),
        ]);
    }
    Ok((t, ok))
}

const VERIFY_COLUMNS: [&str; 10] =
    ["check_id", "p", "s", "min_margin", "argmin_y", "argmin_t", "argmin", "violations", "tol", "passed"];

fn join_point(x: &[f64]) -> Cell {
    Cell::Text(x.iter().map(|v| crate::report::fmt_f64(*v)).collect::<Vec<_>>().join(";"))
}

fn report_row(t: &mut Table, p: f64, s: f64, r: &VerificationReport) -> bool {
    let passed = r.passed();
    t.push_with_detail(
        vec![
            r.check_id.clone().into(),
            p.into(),
            s.into(),
            r.min_margin.into(),
            r.argmin.0.into(),
            r.argmin.1.into(),
            join_point(&[r.argmin.0, r.argmin.1]),
            (r.violations + r.spot_violations).into(),
            r.tol.into(),
            passed.into(),
        ],
        serde_json::to_value(r).ok(),
    );
    passed
}

fn lemma_row(t: &mut Table, p: f64, s: f64, r: &LemmaCheckResult) -> bool {
    t.push_with_detail(
        vec![
            r.lemma_id.clone().into(),
            p.into(),
            s.into(),
            r.min_margin.into(),
            Cell::Missing,
            Cell::Missing,
            join_point(&r.argmin),
            u64::from(!r.passed).into(),
            r.tol.into(),
            r.passed.into(),
        ],
        serde_json::to_value(r).ok(),
    );
    r.passed
}

fn falsify_row(t: &mut Table, f: &Falsification) -> bool {
    t.push_with_detail(
        vec![
            f.id.clone().into(),
            f.p.into(),
            f.s.into(),
            f.value.into(),
            f.witness.first().copied().into(),
            f.witness.get(1).copied().into(),
            join_point(&f.witness),
            u64::from(f.found).into(),
            f.threshold.abs().into(),
            f.found.into(),
        ],
        serde_json::to_value(f).ok(),
    );
    f.found
}

fn run_falsify(id: &str, p: f64, s: f64, tol: Option<f64>) -> Result<Falsification> {
    let res = match id {
        "falsify-p-gt-4-3" if p < 2.0 => match tol {
            Some(tol) => {
                let grid = GridSpec { y_max: 2.0, n_y: 400, t_lo: 0.0, t_hi: std::f64::consts::PI, n_t: 400, offset_half_cell: false };
                lemmas::falsify_lt2(p, s, grid, tol)
            }
            None => falsify_beyond_cutoff(p, s),
        },
        "falsify-supercritical" if p >= 2.0 => falsify_supercritical(p, s),
        _ => Err(Error::Domain(format!("{id} does not apply at p = {p}"))),
    };
    match res {
        Err(Error::WitnessNotFound(_)) => Ok(Falsification {
            id: id.into(),
            p,
            s,
            found: false,
            witness: Vec::new(),
            value: f64::NAN,
            threshold: tol.map_or(0.0, |t| -t),
        }),
        other => other,
    }
}

fn run_master(cfg: &RunConfig, branch: Branch, p: f64, s: f64) -> Result<VerificationReport> {
    let grid = GridSpec::for_branch(branch, p, cfg.y_max, cfg.grid_ny, cfg.grid_nt);
    verify_region_with(branch, ExponentPair::new(p, s)?, grid, cfg.tol.unwrap_or(MARGIN_TOL), cfg.seed)
}

fn retol(mut r: LemmaCheckResult, tol: Option<f64>) -> LemmaCheckResult {
    if let Some(t) = tol {
        r.tol = t;
        r.passed = r.min_margin >= -t;
    }
    r
}

/// Ids that `verify all` runs at `(p, s)`. Falsification searches are not among them.
pub fn all_ids(p: f64, s: f64) -> Result<Vec<&'static str>> {
    let mut ids = Vec::new();
    if let Some(b) = master_branch(p, s)? {
        ids.push(b.id());
    }
    ids.extend(lemmas::applicable_ids(p, s)?);
    if p >= 2.0 {
        ids.push("subharmonic-mean");
    }
    Ok(ids)
}

pub fn cmd_verify(cfg: &RunConfig, ids: &[String]) -> Result<(Table, bool)> {
    let mut t = Table::new(&VERIFY_COLUMNS);
    let mut ok = true;
    let run_all = ids.is_empty() || ids.iter().any(|i| i == "all");
    for (p, s) in cfg.pairs()? {
        ExponentPair::new(p, s)?;
        let here: Vec<String> = if run_all {
            all_ids(p, s)?.into_iter().map(String::from).collect()
        } else {
            ids.to_vec()
        };
        for id in &here {
            let id = id.as_str();
            ok &= if let Some(branch) = branch_of(id) {
                report_row(&mut t, p, s, &run_master(cfg, branch, p, s)?)
            } else if id == "subharmonic-mean" {
                let r = subharmonic_mean_check(p, 1000, 0.05, cfg.seed, cfg.tol.unwrap_or(MARGIN_TOL))?;
                report_row(&mut t, p, s, &r)
            } else if FALSIFY_IDS.contains(&id) {
                falsify_row(&mut t, &run_falsify(id, p, s, cfg.tol)?)
            } else {
                if !lemmas::applicable_ids(p, s)?.contains(&id) {
                    return Err(Error::Domain(format!("{id} does not apply at p = {p}, s = {s}")));
                }
                let r = retol(lemmas::run_check(id, p, s, cfg.grid_nt)?, cfg.tol);
                lemma_row(&mut t, p, s, &r)
            };
        }
    }
    Ok((t, ok))
}

pub fn cmd_falsify(cfg: &RunConfig) -> Result<(Table, bool)> {
    let mut t = Table::new(&["check_id", "p", "s", "found", "witness_y", "witness_t", "value", "threshold"]);
    let mut ok = true;
    for (p, s) in cfg.pairs()? {
        let id = if p < 2.0 { FALSIFY_IDS[0] } else { FALSIFY_IDS[1] };
        let f = run_falsify(id, p, s, cfg.tol)?;
        ok &= f.found;
        t.push_with_detail(
            vec![
                f.id.clone().into(),
                p.into(),
                s.into(),
                f.found.into(),
                f.witness.first().copied().into(),
                f.witness.get(1).copied().into(),
                f.value.into(),
                f.threshold.into(),
            ],
            serde_json::to_value(&f).ok(),
        );
    }
    Ok((t, ok))
}

pub fn cmd_experiment(cfg: &RunConfig, kind: ExperimentKind) -> Result<(Table, bool)> {
    match kind {
        ExperimentKind::Ratio => ratio_experiment(cfg),
        ExperimentKind::Sharpness => sharpness_experiment(cfg),
        ExperimentKind::Isoperimetric => isoperimetric_experiment(cfg),
    }
}

fn ratio_experiment(cfg: &RunConfig) -> Result<(Table, bool)> {
    let mut t = Table::new(&["p", "s", "signal", "ratio", "conjugate_ratio", "A", "within"]);
    let mut ok = true;
    let band = BAND.min(cfg.n as i64 / 2 - 1);
    for (p, s) in cfg.pairs()? {
        let a = a_constant(p, s)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for k in 0..cfg.trials {
            let f = random_band_limited(&mut rng, cfg.n, band, GridOffset::Zero)?;
            let r = projection_ratio(&f, p, s)?;
            let rc = conjugate_route_ratio(&f, p, s)?;
            let within = r <= a * (1.0 + RATIO_SLACK) && rc <= a * (1.0 + RATIO_SLACK);
            ok &= within;
            t.push(vec![p.into(), s.into(), k.into(), r.into(), rc.into(), a.into(), within.into()]);
        }
    }
    Ok((t, ok))
}

fn sharpness_experiment(cfg: &RunConfig) -> Result<(Table, bool)> {
    let mut t = Table::new(&["p", "s", "y_star", "gamma", "ratio", "grid_ratio", "target", "fraction"]);
    let mut ok = true;
    for (p, s) in cfg.pairs()? {
        let y = sharp_lower_bound(p, s)?
            .y_star
            .ok_or_else(|| Error::Unsupported(format!("the lower bound is not attained at p = {p}, s = {s}")))?;
        let gammas: Vec<f64> =
            if cfg.gammas.is_empty() { [0.81, 0.9, 0.96].iter().map(|g| g / p).collect() } else { cfg.gammas.clone() };
        let sw = sharpness_sweep(p, s, &gammas, y, cfg.n)?;
        ok &= sw.strictly_increasing()
            && sw.identity_gap <= 1e-12
            && sw.rows.iter().all(|r| r.ratio <= sw.target * (1.0 + RATIO_SLACK));
        for r in &sw.rows {
            t.push(vec![
                p.into(),
                s.into(),
                y.into(),
                r.gamma.into(),
                r.ratio.into(),
                r.grid_ratio.into(),
                r.target.into(),
                (r.ratio / r.target).into(),
            ]);
        }
    }
    Ok((t, ok))
}

fn isoperimetric_experiment(cfg: &RunConfig) -> Result<(Table, bool)> {
    let mut t = Table::new(&["p", "signal", "value", "bound", "expected", "within"]);
    let mut ok = true;
    let mut ps: Vec<f64> = cfg.pairs()?.into_iter().map(|(p, _)| p).collect();
    ps.dedup();
    for p in ps {
        let mut signals: Vec<(String, CircleSignal, Option<f64>)> = Vec::new();
        for n in 0..=3i64 {
            let f = CircleSignal::from_coefficients(cfg.n, GridOffset::Zero, &[(n, Complex64::new(1.0, 0.0))])?;
            let name = if n == 0 { "one".to_string() } else { format!("zeta^{n}") };
            signals.push((name, f, Some(1.0 / (p * n as f64 + 1.0))));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let band = BAND.min(cfg.n as i64 / 2 - 1);
        signals.push(("random".into(), random_band_limited(&mut rng, cfg.n, band, GridOffset::Zero)?, None));
        for (name, f, expected) in signals {
            let v = isoperimetric_ratio(&f, p, RADIAL_NODES)?;
            let within = v.within_bound() && expected.map_or(true, |e| (v.value - e).abs() <= 1e-8);
            ok &= within;
            t.push(vec![p.into(), name.into(), v.value.into(), v.bound.into(), expected.into(), within.into()]);
        }
    }
    Ok((t, ok))
}

/// Parse, run and write the report; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (table, ok) = match execute(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("riesz: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cfg.out {
        Some(path) => File::create(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                table.write(cfg.format, &mut w)?;
                w.flush().map_err(|e| Error::Io(e.to_string()))
            }),
        None => table.write(cfg.format, io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("riesz: {e}");
        return exit_code(&e);
    }
    let failed = table.column("passed").or_else(|| table.column("within")).map_or(0, |c| {
        c.iter().filter(|v| matches!(v, Cell::Bool(false))).count()
    });
    if !ok {
        eprintln!("riesz: {} of {} rows failed", failed.max(1), table.rows.len());
        1
    } else {
        0
    }
}
