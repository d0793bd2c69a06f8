//! Round trip of a signal through the sample and coefficient CSV formats.
//!
//! cargo run --release --example signal_io

use num_complex::Complex64;
use riesz_sharp::spectral::io::{read_coefficients_csv, read_samples_csv, write_coefficients_csv, write_samples_csv};
use riesz_sharp::spectral::{harmonic_conjugate, CircleSignal, GridOffset};

fn main() -> riesz_sharp::Result<()> {
    let f = CircleSignal::from_fn(8, GridOffset::Half, |t| Complex64::new(2.0 * t.cos(), 0.0))?;
    let mut buf = Vec::new();
    write_samples_csv(&harmonic_conjugate(&f), &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    let back = read_samples_csv(buf.as_slice())?;

    let mut coeffs = Vec::new();
    write_coefficients_csv(&back, &mut coeffs)?;
    print!("{}", String::from_utf8_lossy(&coeffs));
    let again = read_coefficients_csv(coeffs.as_slice(), 8, GridOffset::Half)?;
    let err = again.samples().iter().zip(back.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("max round-trip error {err:.1e}");
    Ok(())
}
