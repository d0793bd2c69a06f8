//! CSV exchange: samples as `(t, re, im)` rows, coefficients as `(n, re, im)`.

use super::signal::{CircleSignal, GridOffset};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::io::{Read, Write};

fn io_err<E: std::fmt::Display>(e: E) -> Error {
    Error::Io(e.to_string())
}

pub fn write_samples_csv<W: Write>(f: &CircleSignal, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "re", "im"]).map_err(io_err)?;
    for (t, z) in f.nodes().into_iter().zip(f.samples()) {
        w.write_record([format!("{t:.17e}"), format!("{:.17e}", z.re), format!("{:.17e}", z.im)]).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Reads `(t, re, im)` rows; the grid offset is inferred from the first node.
pub fn read_samples_csv<R: Read>(input: R) -> Result<CircleSignal> {
    let mut rows = Vec::new();
    for rec in csv::Reader::from_reader(input).deserialize::<(f64, f64, f64)>() {
        rows.push(rec.map_err(io_err)?);
    }
    let n = rows.len();
    let first = rows.first().ok_or_else(|| Error::Size("empty sample file".into()))?.0;
    let sigma = first * n as f64 / TAU;
    let offset = if sigma.abs() < 1e-6 {
        GridOffset::Zero
    } else if (sigma - 0.5).abs() < 1e-6 {
        GridOffset::Half
    } else {
        return Err(Error::Size(format!("first node {first} is not on a uniform grid of {n} points")));
    };
    CircleSignal::from_samples(rows.into_iter().map(|(_, re, im)| Complex64::new(re, im)).collect(), offset)
}

/// Writes every coefficient `−N/2 <= n < N/2` in increasing `n`.
pub fn write_coefficients_csv<W: Write>(f: &CircleSignal, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "re", "im"]).map_err(io_err)?;
    let half = f.len() as i64 / 2;
    for m in -half..half {
        let c = f.coeff(m);
        w.write_record([m.to_string(), format!("{:.17e}", c.re), format!("{:.17e}", c.im)]).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Reads a sparse `(n, re, im)` list into a signal of length `len`.
pub fn read_coefficients_csv<R: Read>(input: R, len: usize, offset: GridOffset) -> Result<CircleSignal> {
    let mut coeffs = Vec::new();
    for rec in csv::Reader::from_reader(input).deserialize::<(i64, f64, f64)>() {
        let (m, re, im) = rec.map_err(io_err)?;
        coeffs.push((m, Complex64::new(re, im)));
    }
    CircleSignal::from_coefficients(len, offset, &coeffs)
}
