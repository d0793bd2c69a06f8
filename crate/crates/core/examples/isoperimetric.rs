//! Area integral of the harmonic extension against the boundary norm.
//!
//! cargo run --release --example isoperimetric

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riesz_sharp::spectral::{isoperimetric_ratio, random_band_limited, CircleSignal, GridOffset};

fn main() -> riesz_sharp::Result<()> {
    for p in [1.5, 2.0, 3.0] {
        for n in 0..=3 {
            let f = CircleSignal::from_coefficients(1024, GridOffset::Zero, &[(n, Complex64::new(1.0, 0.0))])?;
            let v = isoperimetric_ratio(&f, p, 32)?;
            println!("p={p} zeta^{n}: {:.12}  exact {:.12}  bound {:.6}", v.value, 1.0 / (p * n as f64 + 1.0), v.bound);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_band_limited(&mut rng, 1024, 8, GridOffset::Zero)?;
        let v = isoperimetric_ratio(&f, p, 32)?;
        println!("p={p} random: {:.6} <= {:.6}: {}", v.value, v.bound, v.within_bound());
    }
    Ok(())
}
