//! Crate-wide error type.

/// Everything that can go wrong across the geometry, metric and flow layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("non-finite entries in input")]
    NonFinite,
    #[error("dimension {dim} exceeds the exact-conversion cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("cone is not relatively proper")]
    NotProper,
    #[error("body is not irreducible (boundary not homeomorphic to R^(n-1))")]
    NotIrreducible,
    #[error("body is not a cylinder over a compact base")]
    NotCylinder,
    #[error("body contains a line or is bounded, so it has no strictly convex point")]
    NotInKPlus,
    #[error("apex is not at the origin (|p| = {0:.3e})")]
    ApexNotAtOrigin(f64),
    #[error("support is unbounded in the requested direction")]
    Unbounded,
    #[error("operation requires bounded input")]
    UnboundedInput,
    #[error("direction is not in the closed normal cone")]
    Unsupported,
    #[error("nearest-point iteration did not converge")]
    NoConverge,
    #[error("body must have at least one point generator")]
    EmptyPoints,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
