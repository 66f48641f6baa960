use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown leg label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate leg label `{0}`")]
    DuplicateLabel(String),

    #[error("dimension mismatch joining `{a}` ({da}) with `{b}` ({db})")]
    DimensionMismatch { a: String, da: usize, b: String, db: usize },

    #[error("orientation mismatch: `{a}` and `{b}` are both {orientation}")]
    OrientationMismatch { a: String, b: String, orientation: String },

    #[error("singular parameters: {0} vanishes")]
    Singular(String),

    #[error("{function}: argument {z} within {distance:e} of a pole")]
    PoleProximity { function: &'static str, z: String, distance: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("extrapolation failed: {0}")]
    Extrapolation(String),

    #[error("size overflow: {0}")]
    SizeOverflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
