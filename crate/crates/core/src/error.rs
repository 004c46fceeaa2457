use std::path::PathBuf;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {0} lies outside the open unit disk")]
    OutsideDisk(Complex64),

    #[error("point {0} is not in the open upper half-plane")]
    OutsideHalfPlane(Complex64),

    #[error("non-finite coordinate in {0}")]
    NonFinite(Complex64),

    #[error("invalid compact set: {0}")]
    InvalidSet(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("total mass {found} differs from 1")]
    MassNotUnit { found: f64 },

    #[error("density has a pole at the origin")]
    Pole,

    #[error("grid spacing {spacing} too coarse for boundary feature size {feature}")]
    Resolution { spacing: f64, feature: f64 },

    #[error("stencil clipping {clipped:e} exceeds 1e-3 of total mass {mass}")]
    ExcessClipping { clipped: f64, mass: f64 },

    #[error("operation requires a regular set (concentric disk or Jordan polygon)")]
    IrregularSet,

    #[error("operation is undefined for a singleton set")]
    SingletonSet,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("product has no factors")]
    EmptyFactors,

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
