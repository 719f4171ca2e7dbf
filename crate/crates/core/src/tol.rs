//! Tolerance ladder shared by every numeric predicate in the crate.
//!
//! Three rungs: [`TOL_ZERO`] decides degeneracy (can this vector be
//! normalized at all), [`tol_geom`] decides incidence (is this point on that
//! hyperplane), and statistical tolerances for Monte-Carlo estimates are
//! chosen per call site from the reported standard error. Keeping the ladder
//! in one place keeps downstream predicates consistent with each other.

use std::sync::OnceLock;

/// Degeneracy threshold: norms at or below this are treated as zero.
pub const TOL_ZERO: f64 = 1e-12;

/// Default incidence tolerance; see [`tol_geom`].
pub const DEFAULT_TOL_GEOM: f64 = 1e-9;

static TOL_GEOM: OnceLock<f64> = OnceLock::new();

/// Incidence tolerance used by membership, dedup and rank predicates.
///
/// Defaults to [`DEFAULT_TOL_GEOM`]; the `RECESS_TOL` environment variable
/// overrides it (read once, at first use).
pub fn tol_geom() -> f64 {
    *TOL_GEOM.get_or_init(|| {
        std::env::var("RECESS_TOL")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .unwrap_or(DEFAULT_TOL_GEOM)
    })
}
