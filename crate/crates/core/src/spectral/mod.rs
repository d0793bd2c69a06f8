//! Circle signals, Riesz projections and the experiments built on them.

pub mod extremal;
pub mod io;
pub mod isoperimetric;
pub mod signal;

pub use extremal::{closed_form_projections, extremal_signal, sharpness_sweep, ExtremalFamilyParams, SharpnessSweep, SweepRow};
pub use isoperimetric::{isoperimetric_bound, isoperimetric_ratio, IsoperimetricValue};
pub use signal::{
    aggregate_s, conjugate_route_ratio, fourier_analyze, fourier_synthesize, harmonic_conjugate, lp_norm, poisson_extend,
    project_minus, project_plus, projection_ratio, random_band_limited, CircleSignal, GridOffset,
};
