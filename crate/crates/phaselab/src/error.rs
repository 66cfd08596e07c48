//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("packets are not compatible: {0}")]
    PacketMismatch(String),

    #[error("quadrature grid is not compliant: {0}")]
    NonCompliantGrid(String),

    #[error("empty lattice range on the {axis} axis")]
    EmptyRange { axis: &'static str },

    #[error("matrix is not Hermitian: max asymmetry {max_asymmetry:.3e} exceeds {tolerance:.3e}")]
    NonHermitian {
        max_asymmetry: f64,
        tolerance: f64,
    },

    #[error("momentum {value} is not on the lattice with spacing {spacing} (offset {offset:.3e})")]
    OffLattice {
        value: f64,
        spacing: f64,
        offset: f64,
    },

    #[error("position {value} is not a grid node (spacing {spacing})")]
    OffGrid { value: f64, spacing: f64 },

    #[error("{n} particles exceed the factorial enumeration limit of {max}")]
    TooManyParticles { n: usize, max: usize },

    #[error("total state dimension {dim} exceeds the cap {cap}")]
    DegeneracyOverflow { dim: usize, cap: usize },

    #[error("implied reservoir degeneracy for macrostate {index} rounds to zero; increase the degeneracy scale")]
    VanishingDegeneracy { index: usize },

    #[error("observable vanishes at this phase point; the commutation factor is undefined there")]
    UndefinedAtObservableZero,

    #[error("operation requires {required}, got {got}")]
    Unsupported { required: &'static str, got: String },
}
