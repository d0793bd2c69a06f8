//! Sub-mean-value test of r^p v_p(θ) and the angular profile itself.
//!
//! cargo run --release --example subharmonic

use riesz_sharp::minorant::{subharmonic_mean_check, v_p};

fn main() -> riesz_sharp::Result<()> {
    for p in [2.0, 2.5, 3.0, 4.0, 8.0] {
        let r = subharmonic_mean_check(p, 1000, 0.05, 1, 1e-9)?;
        println!("p={p}: worst mean-minus-centre {:+.3e}, violations {}", r.min_margin, r.violations);
    }
    let p = 3.0;
    for k in 0..=8 {
        let t = std::f64::consts::PI * k as f64 / 8.0;
        println!("v_3({t:.4}) = {:+.6}", v_p(t, p)?);
    }
    Ok(())
}
