//! Empirical norm ratios of random trigonometric polynomials against the
//! sharp constant, by the projection route and the conjugate-function route.
//!
//! cargo run --release --example projection_ratios

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riesz_sharp::constants::{a_constant, critical_order};
use riesz_sharp::spectral::{conjugate_route_ratio, projection_ratio, random_band_limited, CircleSignal, GridOffset};

fn main() -> riesz_sharp::Result<()> {
    let pairs = [(2.0, 2.0), (4.0, 2.0), (4.0, critical_order(4.0)?), (1.25, critical_order(1.25)?)];
    for (p, s) in pairs {
        let a = a_constant(p, s)?;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (mut worst, mut worst_conj) = (0.0f64, 0.0f64);
        for _ in 0..200 {
            let f = random_band_limited(&mut rng, 1 << 12, 24, GridOffset::Zero)?;
            worst = worst.max(projection_ratio(&f, p, s)?);
            worst_conj = worst_conj.max(conjugate_route_ratio(&f, p, s)?);
        }
        println!("p={p:<5} s={s:<8.4} A={a:.6}  max ratio {worst:.6}  max conjugate-route ratio {worst_conj:.6}");
    }
    // |P+f| = |P-f| = 1 pointwise: equality at p = s = 2
    let f = CircleSignal::from_coefficients(256, GridOffset::Zero, &[(-1, Complex64::new(1.0, 0.0)), (1, Complex64::new(1.0, 0.0))])?;
    println!("zeta + conj(zeta) at p = s = 2: ratio {:.15}", projection_ratio(&f, 2.0, 2.0)?);
    Ok(())
}
