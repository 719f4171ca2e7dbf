//! Polyhedral cone algebra in generator form: linearity spaces, double
//! description duality, polarity, relative properness, spherical measure and
//! spherical centroid.
//!
//! Cones are stored canonically: `lines` is an orthonormal basis of the full
//! linearity space (hidden lineality among input rays is promoted), and
//! `rays` is a pointed, irredundant, deduplicated set orthogonal to the
//! lines. Canonical form makes structural predicates (properness, class
//! splits, measures) plain case analysis.

mod dd;
pub(crate) mod sphere;

pub use dd::DEFAULT_DIM_CAP;

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geom::{orthonormalize, rank_of, UnitVector, Vector};
use crate::lp;
use crate::tol::{tol_geom, TOL_ZERO};

/// An orthonormal basis of a linear subspace (possibly empty).
#[derive(Clone, Debug)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl LinearSubspace {
    pub fn new(ambient: usize, vectors: &[Vector]) -> Self {
        let basis = orthonormalize(vectors, tol_geom());
        LinearSubspace { ambient, basis }
    }

    pub fn empty(ambient: usize) -> Self {
        LinearSubspace { ambient, basis: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &Vector, tol: f64) -> bool {
        v.project_off(&self.basis).norm() <= tol * (1.0 + v.norm())
    }

    /// Component of `v` orthogonal to this subspace.
    pub fn project_off(&self, v: &Vector) -> Vector {
        v.project_off(&self.basis)
    }

    /// Orthogonal projection of `v` onto this subspace.
    pub fn project_onto(&self, v: &Vector) -> Vector {
        v.project_onto(&self.basis)
    }
}

/// A closed convex polyhedral cone { sum l_i r_i + sum m_j l_j : l_i >= 0 }.
#[derive(Clone, Debug)]
pub struct PolyhedralCone {
    dim: usize,
    rays: Vec<Vector>,
    lines: Vec<Vector>,
    facets: OnceLock<Vec<Vector>>,
}

impl PolyhedralCone {
    /// Builds the canonical form of a cone from arbitrary generators.
    ///
    /// Lines are orthonormalized, rays are reduced modulo the lines,
    /// lineality hidden in opposite ray combinations is promoted to `lines`,
    /// and redundant rays are pruned.
    pub fn from_generators(dim: usize, rays: Vec<Vector>, lines: Vec<Vector>) -> Result<Self> {
        for g in rays.iter().chain(lines.iter()) {
            if g.dim() != dim {
                return Err(Error::DimMismatch { left: g.dim(), right: dim });
            }
            if !g.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        let tol = tol_geom();
        let mut basis = orthonormalize(&lines, tol);
        let mut dirs = reduce_rays(&rays, &basis, tol);

        // Promote hidden lineality: a ray whose negation stays inside the
        // cone spans a line together with the rest of the generators.
        loop {
            let mut promoted = None;
            for (i, r) in dirs.iter().enumerate() {
                if lp::cone_contains(&dirs, &basis, &r.scale(-1.0), tol) {
                    promoted = Some(i);
                    break;
                }
            }
            match promoted {
                Some(i) => {
                    let l = dirs.remove(i);
                    basis.push(l);
                    basis = orthonormalize(&basis, tol);
                    dirs = reduce_rays(&dirs, &basis, tol);
                }
                None => break,
            }
        }

        // Prune redundant rays.
        let mut i = 0;
        while i < dirs.len() {
            let mut others = dirs.clone();
            let r = others.remove(i);
            if lp::cone_contains(&others, &basis, &r, tol) {
                dirs.remove(i);
            } else {
                i += 1;
            }
        }

        sort_vectors(&mut dirs);
        Ok(PolyhedralCone { dim, rays: dirs, lines: basis, facets: OnceLock::new() })
    }

    /// Wraps parts that are already canonical (pointed rays orthogonal to an
    /// orthonormal line basis); skips the LP passes.
    pub(crate) fn from_canonical_parts(dim: usize, rays: Vec<Vector>, lines: Vec<Vector>) -> Self {
        PolyhedralCone { dim, rays, lines, facets: OnceLock::new() }
    }

    /// The zero cone {o}.
    pub fn zero(dim: usize) -> Self {
        PolyhedralCone { dim, rays: Vec::new(), lines: Vec::new(), facets: OnceLock::new() }
    }

    /// The full space R^dim.
    pub fn full_space(dim: usize) -> Self {
        let lines = (0..dim).map(|i| Vector::basis(dim, i)).collect();
        PolyhedralCone { dim, rays: Vec::new(), lines, facets: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lines(&self) -> &[Vector] {
        &self.lines
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    pub fn is_full_space(&self) -> bool {
        self.lines.len() == self.dim
    }

    /// Dimension of the affine (= linear) hull of the cone.
    pub fn span_dim(&self) -> usize {
        self.lines.len() + rank_of(&self.rays, tol_geom())
    }

    /// Membership by LP feasibility at the incidence tolerance.
    pub fn contains(&self, v: &Vector) -> bool {
        if v.norm() <= TOL_ZERO {
            return true;
        }
        lp::cone_contains(&self.rays, &self.lines, v, tol_geom())
    }

    /// Membership decided by the cached facet description (sign tests).
    ///
    /// Exact-conversion cap applies; this is the independent route used to
    /// cross-check [`PolyhedralCone::contains`].
    pub fn contains_via_facets(&self, v: &Vector) -> Result<bool> {
        let tol = tol_geom() * (1.0 + v.norm());
        let facets = self.facet_normals()?;
        Ok(facets.iter().all(|h| h.dot(v) <= tol))
    }

    /// Outward unit normals h with cone = intersection of { <h, x> <= 0 }.
    ///
    /// Lines of the polar appear as +/- pairs, so the list always describes
    /// the cone exactly, also when it is lower-dimensional.
    pub fn facet_normals(&self) -> Result<&[Vector]> {
        if self.dim > DEFAULT_DIM_CAP {
            return Err(Error::DimensionCap { dim: self.dim, cap: DEFAULT_DIM_CAP });
        }
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        let polar = self.polar()?;
        let mut normals = polar.rays.clone();
        for l in &polar.lines {
            normals.push(l.clone());
            normals.push(l.scale(-1.0));
        }
        sort_vectors(&mut normals);
        let _ = self.facets.set(normals);
        Ok(self.facets.get().unwrap())
    }

    /// The polar cone { y : <y, x> <= 0 for all x in the cone }.
    pub fn polar(&self) -> Result<PolyhedralCone> {
        self.polar_capped(DEFAULT_DIM_CAP)
    }

    pub fn polar_capped(&self, cap: usize) -> Result<PolyhedralCone> {
        let mut constraints = self.rays.clone();
        for l in &self.lines {
            constraints.push(l.clone());
            constraints.push(l.scale(-1.0));
        }
        let raw = dd::convert(self.dim, &constraints, cap)?;
        PolyhedralCone::from_generators(self.dim, raw.rays, raw.lines)
    }

    /// The largest linear subspace contained in the cone.
    pub fn linearity_space(&self) -> LinearSubspace {
        LinearSubspace { ambient: self.dim, basis: self.lines.clone() }
    }

    /// True iff the cone is a proper subset of its affine hull.
    pub fn is_relatively_proper(&self) -> bool {
        !self.rays.is_empty()
    }

    /// Minkowski sum of two cones (generator union, re-canonicalized).
    pub fn sum(&self, other: &PolyhedralCone) -> Result<PolyhedralCone> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { left: self.dim, right: other.dim });
        }
        let rays = self.rays.iter().chain(&other.rays).cloned().collect();
        let lines = self.lines.iter().chain(&other.lines).cloned().collect();
        PolyhedralCone::from_generators(self.dim, rays, lines)
    }

    /// Orthogonal projection of the cone onto the complement of `quotient`.
    pub fn project_off_subspace(&self, quotient: &LinearSubspace) -> Result<PolyhedralCone> {
        let rays = self.rays.iter().map(|r| quotient.project_off(r)).collect();
        let lines = self.lines.iter().map(|l| quotient.project_off(l)).collect();
        PolyhedralCone::from_generators(self.dim, rays, lines)
    }

    /// Set equality through mutual generator membership.
    pub fn equals_as_set(&self, other: &PolyhedralCone) -> bool {
        let inside = |a: &PolyhedralCone, b: &PolyhedralCone| {
            a.rays.iter().all(|r| b.contains(r))
                && a.lines.iter().all(|l| b.contains(l) && b.contains(&l.scale(-1.0)))
        };
        inside(self, other) && inside(other, self)
    }
}

/// Generators of { x : <h, x> <= 0 for all h in `normals` }.
pub fn dd_convert(dim: usize, normals: &[Vector]) -> Result<PolyhedralCone> {
    let raw = dd::convert(dim, normals, DEFAULT_DIM_CAP)?;
    PolyhedralCone::from_generators(dim, raw.rays, raw.lines)
}

/// Irredundant halfspace description of a cone (see
/// [`PolyhedralCone::facet_normals`]).
pub fn dd_facets(cone: &PolyhedralCone) -> Result<Vec<Vector>> {
    cone.facet_normals().map(|f| f.to_vec())
}

/// Hausdorff measure of cone intersect S^{n-1} inside ambient R^n.
///
/// Exact in dimensions up to 3 (arc length, lune and spherical polygon
/// area); Monte-Carlo beyond that.
pub fn spherical_measure(cone: &PolyhedralCone) -> f64 {
    sphere::measure(cone)
}

/// Monte-Carlo spherical measure with its standard error.
pub fn spherical_measure_mc(cone: &PolyhedralCone, samples: usize, seed: u64) -> (f64, f64) {
    sphere::measure_mc(cone, samples, seed)
}

/// Normalized spherical center of mass of cone intersect S^{m-1}, taken
/// inside the affine hull of the cone (dimension m).
///
/// Fails with [`Error::NotProper`] when the cone is a subspace (including
/// {o}), where the direction integral has no meaning.
pub fn spherical_centroid(cone: &PolyhedralCone) -> Result<UnitVector> {
    sphere::centroid(cone)
}

/// Monte-Carlo spherical centroid and an estimate of its angular error.
pub fn spherical_centroid_mc(
    cone: &PolyhedralCone,
    samples: usize,
    seed: u64,
) -> Result<(UnitVector, f64)> {
    sphere::centroid_mc(cone, samples, seed)
}

/// Measure evaluation strategy for a [`SphericalRegion`].
#[derive(Clone, Copy, Debug)]
pub enum MeasureMode {
    Exact2d,
    Exact3d,
    MonteCarlo { samples: usize, seed: u64 },
}

/// Result of a measure evaluation; `std_err` is present for Monte-Carlo.
#[derive(Clone, Copy, Debug)]
pub struct MeasureEstimate {
    pub value: f64,
    pub std_err: Option<f64>,
}

/// The intersection of a cone with the unit sphere, with measure and
/// centroid accessors.
#[derive(Clone, Debug)]
pub struct SphericalRegion {
    cone: PolyhedralCone,
    mode: MeasureMode,
}

impl SphericalRegion {
    /// Picks the exact mode for ambient dimension <= 3, Monte-Carlo beyond.
    pub fn new(cone: PolyhedralCone) -> Self {
        let mode = match cone.dim() {
            0..=2 => MeasureMode::Exact2d,
            3 => MeasureMode::Exact3d,
            _ => MeasureMode::MonteCarlo { samples: sphere::DEFAULT_MC_SAMPLES, seed: 0 },
        };
        SphericalRegion { cone, mode }
    }

    pub fn with_mode(cone: PolyhedralCone, mode: MeasureMode) -> Self {
        SphericalRegion { cone, mode }
    }

    pub fn cone(&self) -> &PolyhedralCone {
        &self.cone
    }

    pub fn mode(&self) -> MeasureMode {
        self.mode
    }

    pub fn measure(&self) -> MeasureEstimate {
        match self.mode {
            MeasureMode::Exact2d | MeasureMode::Exact3d => {
                MeasureEstimate { value: sphere::measure(&self.cone), std_err: None }
            }
            MeasureMode::MonteCarlo { samples, seed } => {
                let (value, std_err) = sphere::measure_mc(&self.cone, samples, seed);
                MeasureEstimate { value, std_err: Some(std_err) }
            }
        }
    }

    pub fn centroid(&self) -> Result<UnitVector> {
        match self.mode {
            MeasureMode::Exact2d | MeasureMode::Exact3d => sphere::centroid(&self.cone),
            MeasureMode::MonteCarlo { samples, seed } => {
                sphere::centroid_mc(&self.cone, samples, seed).map(|(u, _)| u)
            }
        }
    }
}

fn reduce_rays(rays: &[Vector], lines: &[Vector], tol: f64) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::with_capacity(rays.len());
    for r in rays {
        let red = r.project_off(lines);
        let n = red.norm();
        if n <= tol.max(TOL_ZERO) * r.norm().max(1.0) {
            continue;
        }
        let unit = red.scale(1.0 / n);
        if !out.iter().any(|o| o.dist(&unit) <= tol.max(1e-9)) {
            out.push(unit);
        }
    }
    out
}

fn sort_vectors(vs: &mut [Vector]) {
    vs.sort_by(|a, b| {
        for (x, y) in a.coords().iter().zip(b.coords()) {
            match x.total_cmp(y) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    fn cone2(rays: &[&[f64]]) -> PolyhedralCone {
        PolyhedralCone::from_generators(2, rays.iter().map(|r| v(r)).collect(), vec![]).unwrap()
    }

    #[test]
    fn linearity_space_examples() {
        // A single ray has no lines.
        let ray = cone2(&[&[0.0, 1.0]]);
        assert_eq!(ray.linearity_space().rank(), 0);

        // Upper half-plane stored with an explicit line.
        let half = PolyhedralCone::from_generators(2, vec![v(&[0.0, 1.0])], vec![v(&[1.0, 0.0])]).unwrap();
        assert_eq!(half.linearity_space().rank(), 1);
        assert!(half.linearity_space().contains(&v(&[1.0, 0.0]), 1e-9));

        // Hidden lineality: cone{(1,1), (-1,-1), (0,1)} has line span{(1,1)}.
        let hidden = cone2(&[&[1.0, 1.0], &[-1.0, -1.0], &[0.0, 1.0]]);
        let l = hidden.linearity_space();
        assert_eq!(l.rank(), 1);
        assert!(l.contains(&v(&[1.0, 1.0]), 1e-9));
        assert_eq!(hidden.rays().len(), 1);
    }

    #[test]
    fn polar_examples() {
        // polar(ray e2) = lower half-plane.
        let ray = cone2(&[&[0.0, 1.0]]);
        let p = ray.polar().unwrap();
        assert_eq!(p.lines().len(), 1);
        assert_eq!(p.rays().len(), 1);
        assert!(p.contains(&v(&[5.0, -1.0])));
        assert!(!p.contains(&v(&[0.0, 1.0])));

        // polar(R^n) = {o}.
        let full = PolyhedralCone::full_space(3);
        assert!(full.polar().unwrap().is_zero());

        // polar(cone{(-1,0),(0,1)}) = cone{(1,0),(0,-1)}.
        let quarter = cone2(&[&[-1.0, 0.0], &[0.0, 1.0]]);
        let p = quarter.polar().unwrap();
        let expect = cone2(&[&[1.0, 0.0], &[0.0, -1.0]]);
        assert!(p.equals_as_set(&expect));
    }

    #[test]
    fn polar_involution_on_samples() {
        let quarter = cone2(&[&[-1.0, 0.0], &[0.0, 1.0]]);
        let back = quarter.polar().unwrap().polar().unwrap();
        assert!(back.equals_as_set(&quarter));
    }

    #[test]
    fn relatively_proper_examples() {
        assert!(cone2(&[&[0.0, 1.0]]).is_relatively_proper());
        let line = PolyhedralCone::from_generators(2, vec![], vec![v(&[1.0, 0.0])]).unwrap();
        assert!(!line.is_relatively_proper());
        assert!(!PolyhedralCone::zero(2).is_relatively_proper());
    }

    #[test]
    fn sum_and_projection_examples() {
        let e1 = cone2(&[&[1.0, 0.0]]);
        let e1neg = cone2(&[&[-1.0, 0.0]]);
        let s = e1.sum(&e1neg).unwrap();
        assert_eq!(s.rays().len(), 0);
        assert_eq!(s.lines().len(), 1);

        let diag = cone2(&[&[1.0, 1.0]]);
        let l = LinearSubspace::new(2, &[v(&[1.0, 0.0])]);
        let proj = diag.project_off_subspace(&l).unwrap();
        assert_eq!(proj.rays().len(), 1);
        assert!(proj.rays()[0].dist(&v(&[0.0, 1.0])) <= 1e-12);
    }

    #[test]
    fn membership_quarter_cone() {
        let quarter = cone2(&[&[-1.0, 0.0], &[0.0, 1.0]]);
        assert!(!quarter.contains(&v(&[1.0, 1.0])));
        assert!(quarter.contains(&v(&[-3.0, 2.0])));
        // Facet route agrees.
        assert!(!quarter.contains_via_facets(&v(&[1.0, 1.0])).unwrap());
        assert!(quarter.contains_via_facets(&v(&[-3.0, 2.0])).unwrap());
    }

    #[test]
    fn dd_round_trip_octant() {
        let oct = PolyhedralCone::from_generators(
            3,
            vec![v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])],
            vec![],
        )
        .unwrap();
        let facets = dd_facets(&oct).unwrap();
        assert_eq!(facets.len(), 3);
        for f in &facets {
            // Each facet normal is a negated coordinate direction.
            assert!(f.coords().iter().filter(|c| c.abs() > 1e-9).count() == 1);
            assert!(f.coords().iter().sum::<f64>() < 0.0);
        }
        let back = dd_convert(3, &facets).unwrap();
        assert!(back.equals_as_set(&oct));
    }

    #[test]
    fn full_space_from_no_constraints() {
        let c = dd_convert(4, &[]).unwrap();
        assert!(c.is_full_space());
    }

    #[test]
    fn measure_examples() {
        assert_relative_eq!(spherical_measure(&PolyhedralCone::full_space(2)), 2.0 * PI, epsilon = 1e-12);
        let quarter = cone2(&[&[-1.0, 0.0], &[0.0, 1.0]]);
        assert_relative_eq!(spherical_measure(&quarter), PI / 2.0, epsilon = 1e-12);
        let oct = PolyhedralCone::from_generators(
            3,
            vec![v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])],
            vec![],
        )
        .unwrap();
        assert_relative_eq!(spherical_measure(&oct), PI / 2.0, epsilon = 1e-9);
    }

    #[test]
    fn centroid_examples() {
        let quarter = cone2(&[&[-1.0, 0.0], &[0.0, 1.0]]);
        let cd = spherical_centroid(&quarter).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!(cd.as_ref().dist(&v(&[-s, s])) <= 1e-12);

        let sym = cone2(&[&[1.0, 1.0], &[-1.0, 1.0]]);
        let cd = spherical_centroid(&sym).unwrap();
        assert!(cd.as_ref().dist(&v(&[0.0, 1.0])) <= 1e-12);

        let oct = PolyhedralCone::from_generators(
            3,
            vec![v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])],
            vec![],
        )
        .unwrap();
        let cd = spherical_centroid(&oct).unwrap();
        let t = 1.0 / 3f64.sqrt();
        assert!(cd.as_ref().dist(&v(&[t, t, t])) <= 1e-9);

        assert!(matches!(
            spherical_centroid(&PolyhedralCone::zero(2)),
            Err(Error::NotProper)
        ));
    }
}
