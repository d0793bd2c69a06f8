//! Grid verification of the reduced two-variable master inequality on
//! each proven branch.
//!
//! cargo run --release --example master_inequality

use riesz_sharp::constants::{ExponentPair, SharpConstantBundle};
use riesz_sharp::minorant::{verify_region, Branch, GridSpec};
use std::time::Instant;

fn main() -> riesz_sharp::Result<()> {
    let cases = [
        (Branch::CriticalGe2, ExponentPair::critical(3.0)?),
        (Branch::CriticalGe2, ExponentPair::critical(6.0)?),
        (Branch::SupercriticalGe2, ExponentPair::new(3.0, 8.0)?),
        (Branch::SupercriticalGe2, ExponentPair::new(4.0, 10.0)?),
        (Branch::CriticalLt2, ExponentPair::critical(1.25)?),
    ];
    for (branch, pair) in cases {
        let grid = GridSpec::for_branch(branch, pair.p, 10.0, 1000, 1000);
        let start = Instant::now();
        let r = verify_region(branch, pair, grid)?;
        let y_tilde = SharpConstantBundle::compute(pair.p, pair.s)?.y_tilde.unwrap_or(0.0);
        println!(
            "{:<26} p={:<5} s={:<8.4} min={:+.3e} at ({:.4}, {:.4})  expected zero ({:.4}, {:.4})  violations={} spot_min={:+.2e} reduction_err={:.1e}  {:?}",
            r.check_id,
            pair.p,
            pair.s,
            r.min_margin,
            r.argmin.0,
            r.argmin.1,
            y_tilde,
            std::f64::consts::PI / pair.p,
            r.violations,
            r.spot_min_margin,
            r.reduction_max_rel_err,
            start.elapsed()
        );
    }
    Ok(())
}
