pub mod cli;
pub mod constants;
pub mod error;
pub mod lemmas;
pub mod minorant;
pub mod numerics;
pub mod quadrature;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
