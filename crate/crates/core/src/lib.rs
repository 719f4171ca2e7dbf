//! Generator-form engine for unbounded convex polyhedral bodies.
//!
//! A body is kept as points + rays + lines (V-form). On top of that the
//! crate provides the recession-cone calculus (linearity spaces, polarity,
//! double description), spherical measures and centroids, the central
//! direction and apex constructions, total curvature, sampled asymptotic
//! metrics, and the three deformation-retraction flows, each emitting
//! time-sampled traces.
//!
//! The `parallel` feature (on by default) runs the data-parallel inner
//! loops (Monte-Carlo sampling, pairwise distance scans, flow steps) on
//! rayon; outputs are identical with the feature disabled.

pub mod bodies;
pub mod cones;
mod error;
mod exec;
pub mod flows;
pub mod geom;
mod lp;
pub mod metrics;
pub mod tol;

#[doc(hidden)]
pub mod testgen;

pub use error::{Error, Result};
