//! Every auxiliary check that applies at a few exponent pairs.
//!
//! The sine-ratio lower bound is reported as failing for 2 < p < 4: the
//! inequality is false there (its margin tends to p/2 − E_p < 0 as t → 0).
//!
//! cargo run --release --example lemma_checks

use riesz_sharp::constants::critical_order;
use riesz_sharp::lemmas::run_applicable;

fn main() -> riesz_sharp::Result<()> {
    let mut pairs = Vec::new();
    for p in [2.5, 3.0, 4.0, 6.0] {
        let star = critical_order(p)?;
        pairs.push((p, star));
        pairs.push((p, 2.0 * star));
    }
    for p in [1.1, 1.25, 4.0 / 3.0] {
        pairs.push((p, critical_order(p)?));
    }
    for (p, s) in pairs {
        println!("p = {p:.4}, s = {s:.4}");
        for r in run_applicable(p, s, 20_000)? {
            println!("  {:<30} {:<5} min margin {:+.3e}", r.lemma_id, if r.passed { "ok" } else { "FAIL" }, r.min_margin);
        }
    }
    Ok(())
}
