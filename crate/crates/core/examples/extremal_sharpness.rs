//! The extremal family approaching the sharp constant as γ → 1/p, and a
//! check of the closed-form projections against the FFT on a dilation.
//!
//! cargo run --release --example extremal_sharpness

use riesz_sharp::constants::sharp_lower_bound;
use riesz_sharp::spectral::extremal::projection_discrepancy;
use riesz_sharp::spectral::{sharpness_sweep, ExtremalFamilyParams};

fn main() -> riesz_sharp::Result<()> {
    let gap = projection_discrepancy(&ExtremalFamilyParams::new(0.2, 0.8, 0.3, 0.95), 1 << 14)?;
    println!("dilated family, FFT vs closed-form P+ (relative L2): {gap:.2e}");

    for (p, s) in [(3.0, 2.0), (3.0, 8.0), (6.0, 20.0)] {
        let y = sharp_lower_bound(p, s)?.y_star.unwrap_or(0.0);
        let gammas: Vec<f64> = [0.5, 0.7, 0.81, 0.9, 0.96, 0.99].iter().map(|g| g / p).collect();
        let sw = sharpness_sweep(p, s, &gammas, y, 1 << 14)?;
        println!("p={p} s={s} y*={y:.6} target {:.9} (identity gap {:.1e})", sw.target, sw.identity_gap);
        for r in &sw.rows {
            println!("  gamma {:.5}  ratio {:.9}  ({:.4} of target)  grid ratio {:.6}", r.gamma, r.ratio, r.ratio / r.target, r.grid_ratio);
        }
    }
    Ok(())
}
