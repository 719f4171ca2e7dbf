//! Unbounded convex bodies in generator form: recession cones, support and
//! faces, classification, Motzkin decomposition, Minkowski sums, balanced
//! support, central direction, normal-cone closure and total curvature.
//!
//! A `VBody` represents conv(points) + cone(rays) + span(lines) and is kept
//! canonical: the (rays, lines) pair is a canonical cone (full lineality in
//! `lines`, pointed irredundant `rays`), points are reduced modulo the
//! lines, deduplicated and pruned to extreme points. Canonical form is what
//! makes generator-level equality checks meaningful.

use serde::{Deserialize, Serialize};

use crate::cones::{self, LinearSubspace, PolyhedralCone};
use crate::error::{Error, Result};
use crate::geom::{normalize, rank_of, Hyperplane, UnitVector, Vector};
use crate::lp;
use crate::metrics::nearest_point_to_hull;
use crate::tol::{tol_geom, TOL_ZERO};

/// Topological class of a convex body, read off its recession cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BodyClass {
    /// Compact: recession cone is {o}.
    Bounded,
    /// Boundary homeomorphic to R^(n-1): recession cone relatively proper.
    Irreducible,
    /// Boundary homeomorphic to S^(n-m-1) x R^m: recession cone is an
    /// m-dimensional subspace.
    Cylinder(usize),
}

/// A closed convex body conv(points) + cone(rays) + span(lines).
#[derive(Clone, Debug)]
pub struct VBody {
    dim: usize,
    points: Vec<Vector>,
    rays: Vec<Vector>,
    lines: Vec<Vector>,
    assume_solid: bool,
}

/// Serialized form of a body; the schema shared with the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BodyJson {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub rays: Vec<Vec<f64>>,
    #[serde(default)]
    pub lines: Vec<Vec<f64>>,
}

impl VBody {
    pub fn new(dim: usize, points: Vec<Vector>, rays: Vec<Vector>, lines: Vec<Vector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPoints);
        }
        for g in points.iter().chain(rays.iter()).chain(lines.iter()) {
            if g.dim() != dim {
                return Err(Error::DimMismatch { left: g.dim(), right: dim });
            }
            if !g.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        for r in &rays {
            if r.norm() <= TOL_ZERO {
                return Err(Error::Degenerate("zero ray generator".into()));
            }
        }
        for l in &lines {
            if l.norm() <= TOL_ZERO {
                return Err(Error::Degenerate("zero line generator".into()));
            }
        }
        let rc = PolyhedralCone::from_generators(dim, rays, lines)?;
        let (crays, clines) = (rc.rays().to_vec(), rc.lines().to_vec());
        let reduced: Vec<Vector> = points.iter().map(|p| p.project_off(&clines)).collect();
        let pruned = prune_points(reduced, &crays, &clines);
        Ok(VBody { dim, points: pruned, rays: crays, lines: clines, assume_solid: false })
    }

    /// Convenience constructor for a compact polytope.
    pub fn from_points(dim: usize, points: Vec<Vector>) -> Result<Self> {
        VBody::new(dim, points, Vec::new(), Vec::new())
    }

    /// The half-space { x : <x, u> >= <p, u> } through `p` with inward normal `u`.
    pub fn half_space(through: &Vector, inward: &UnitVector) -> Result<Self> {
        let dim = through.dim();
        let mut lines = Vec::new();
        for i in 0..dim {
            lines.push(Vector::basis(dim, i));
        }
        VBody::new(dim, vec![through.clone()], vec![inward.as_ref().clone()], lines_orthogonal_to(inward, &lines))
    }

    /// Marks the body as asserted full-dimensional, after a rank check.
    pub fn assume_solid(mut self) -> Result<Self> {
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate("body is not full-dimensional".into()));
        }
        self.assume_solid = true;
        Ok(self)
    }

    pub fn is_assumed_solid(&self) -> bool {
        self.assume_solid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lines(&self) -> &[Vector] {
        &self.lines
    }

    /// Rank check over point differences, rays and lines.
    pub fn is_full_dimensional(&self) -> bool {
        let mut dirs: Vec<Vector> = Vec::new();
        for p in &self.points[1..] {
            dirs.push(p.sub(&self.points[0]));
        }
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lines.iter().cloned());
        rank_of(&dirs, tol_geom()) == self.dim
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        lp::body_contains(&self.points, &self.rays, &self.lines, x, tol)
    }

    pub fn translate(&self, b: &Vector) -> VBody {
        let points = self.points.iter().map(|p| p.add(b)).collect();
        // Translation cannot break canonical form except for the reduction
        // of points modulo lines, which re-runs cheaply.
        let reduced: Vec<Vector> = points;
        let reduced = reduced.iter().map(|p: &Vector| p.project_off(&self.lines)).collect();
        VBody {
            dim: self.dim,
            points: reduced,
            rays: self.rays.clone(),
            lines: self.lines.clone(),
            assume_solid: self.assume_solid,
        }
    }

    /// The scaled body s*K for s >= 0; s = 0 collapses to {o}.
    pub fn scale(&self, s: f64) -> VBody {
        assert!(s >= 0.0, "negative scaling is not defined for bodies");
        if s <= TOL_ZERO {
            return VBody {
                dim: self.dim,
                points: vec![Vector::zeros(self.dim)],
                rays: Vec::new(),
                lines: Vec::new(),
                assume_solid: false,
            };
        }
        VBody {
            dim: self.dim,
            points: self.points.iter().map(|p| p.scale(s)).collect(),
            rays: self.rays.clone(),
            lines: self.lines.clone(),
            assume_solid: self.assume_solid,
        }
    }

    /// Applies a linear map to every generator and re-canonicalizes.
    pub fn apply_linear<F: Fn(&Vector) -> Vector>(&self, f: F) -> Result<VBody> {
        let points: Vec<Vector> = self.points.iter().map(&f).collect();
        let mut rays = Vec::new();
        for r in &self.rays {
            let m = f(r);
            if m.norm() > TOL_ZERO {
                rays.push(m);
            }
        }
        let mut lines = Vec::new();
        for l in &self.lines {
            let m = f(l);
            if m.norm() <= TOL_ZERO {
                return Err(Error::Degenerate("linear map kills a line generator".into()));
            }
            lines.push(m);
        }
        VBody::new(self.dim, points, rays, lines)
    }

    pub fn to_json(&self) -> BodyJson {
        BodyJson {
            dim: self.dim,
            points: self.points.iter().map(|p| p.coords().to_vec()).collect(),
            rays: self.rays.iter().map(|r| r.coords().to_vec()).collect(),
            lines: self.lines.iter().map(|l| l.coords().to_vec()).collect(),
        }
    }

    pub fn from_json(json: &BodyJson) -> Result<Self> {
        let to_vecs = |rows: &[Vec<f64>]| -> Vec<Vector> {
            rows.iter().map(|r| Vector::new(r.clone())).collect()
        };
        for row in json.points.iter().chain(json.rays.iter()).chain(json.lines.iter()) {
            if row.len() != json.dim {
                return Err(Error::DimMismatch { left: row.len(), right: json.dim });
            }
        }
        VBody::new(json.dim, to_vecs(&json.points), to_vecs(&json.rays), to_vecs(&json.lines))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: BodyJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        VBody::from_json(&json)
    }
}

fn lines_orthogonal_to(u: &UnitVector, basis_candidates: &[Vector]) -> Vec<Vector> {
    basis_candidates
        .iter()
        .map(|b| b.axpy(-b.dot(u), u))
        .filter(|v| v.norm() > 1e-9)
        .collect()
}

/// cone(rays) + span(lines): exact in generator form.
pub fn recession_cone(body: &VBody) -> PolyhedralCone {
    PolyhedralCone::from_canonical_parts(body.dim, body.rays.clone(), body.lines.clone())
}

/// sup over K of <., u>: finite iff u is nonpositive on rays and orthogonal
/// to lines, in which case the max is over the points.
pub fn support_value(body: &VBody, u: &UnitVector) -> f64 {
    let tol = tol_geom();
    for r in &body.rays {
        if r.dot(u) > tol {
            return f64::INFINITY;
        }
    }
    for l in &body.lines {
        if l.dot(u).abs() > tol {
            return f64::INFINITY;
        }
    }
    body.points.iter().map(|p| p.dot(u)).fold(f64::NEG_INFINITY, f64::max)
}

/// The contact set of the support hyperplane with outward normal `u`.
#[derive(Clone, Debug)]
pub struct Face {
    pub body: VBody,
    pub direction: UnitVector,
}

/// Face of the body in direction `u` (argmax points, flat rays, all lines).
pub fn face(body: &VBody, u: &UnitVector) -> Result<Face> {
    let sv = support_value(body, u);
    if !sv.is_finite() {
        return Err(Error::Unbounded);
    }
    let tol = tol_geom();
    let scale = 1.0 + body.points.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let pts: Vec<Vector> = body
        .points
        .iter()
        .filter(|p| p.dot(u) >= sv - tol * scale)
        .cloned()
        .collect();
    let rays: Vec<Vector> = body.rays.iter().filter(|r| r.dot(u).abs() <= tol).cloned().collect();
    Ok(Face {
        body: VBody::new(body.dim, pts, rays, body.lines.clone())?,
        direction: u.clone(),
    })
}

/// Minkowski sum: pairwise point sums (pruned), ray and line unions.
pub fn minkowski_sum(a: &VBody, b: &VBody) -> Result<VBody> {
    if a.dim != b.dim {
        return Err(Error::DimMismatch { left: a.dim, right: b.dim });
    }
    let mut points = Vec::with_capacity(a.points.len() * b.points.len());
    for p in &a.points {
        for q in &b.points {
            points.push(p.add(q));
        }
    }
    let rays = a.rays.iter().chain(&b.rays).cloned().collect();
    let lines = a.lines.iter().chain(&b.lines).cloned().collect();
    VBody::new(a.dim, points, rays, lines)
}

/// Motzkin decomposition K = olK + L with L the linearity space of rc(K).
pub fn motzkin_decompose(body: &VBody) -> Result<(VBody, LinearSubspace)> {
    let l = LinearSubspace::new(body.dim, &body.lines);
    // Canonical points and rays are already reduced modulo the lines.
    let ol = VBody::new(body.dim, body.points.clone(), body.rays.clone(), Vec::new())?;
    Ok((ol, l))
}

/// Orthogonal projection of the body onto the complement of `quotient`.
pub fn project_body(body: &VBody, quotient: &LinearSubspace) -> Result<VBody> {
    let points = body.points.iter().map(|p| quotient.project_off(p)).collect();
    let rays: Vec<Vector> = body
        .rays
        .iter()
        .map(|r| quotient.project_off(r))
        .filter(|r| r.norm() > TOL_ZERO)
        .collect();
    let lines: Vec<Vector> = body
        .lines
        .iter()
        .map(|l| quotient.project_off(l))
        .filter(|l| l.norm() > TOL_ZERO)
        .collect();
    VBody::new(body.dim, points, rays, lines)
}

/// Bounded / Irreducible / Cylinder(m), by the structure of rc(K).
pub fn classify(body: &VBody) -> BodyClass {
    if body.rays.is_empty() && body.lines.is_empty() {
        BodyClass::Bounded
    } else if !body.rays.is_empty() {
        BodyClass::Irreducible
    } else {
        BodyClass::Cylinder(body.lines.len())
    }
}

/// Unbounded with no lines: equivalently, has a strictly convex point.
pub fn is_k_plus(body: &VBody) -> bool {
    !body.rays.is_empty() && body.lines.is_empty()
}

/// Balanced support at u: a support hyperplane with outward normal -u
/// exists and its contact face contains half-lines only inside full lines.
pub fn has_balanced_support(body: &VBody, u: &UnitVector) -> bool {
    let neg = UnitVector::new_unchecked(u.as_ref().scale(-1.0));
    if !support_value(body, &neg).is_finite() {
        return false;
    }
    match face(body, &neg) {
        Ok(f) => f.body.rays().is_empty(),
        Err(_) => false,
    }
}

/// Balanced support plus u itself being a recession direction.
pub fn has_balanced_direction(body: &VBody, u: &UnitVector) -> bool {
    has_balanced_support(body, u) && recession_cone(body).contains(u)
}

/// The central direction: spherical centroid of the recession cone.
pub fn central_direction(body: &VBody) -> Result<UnitVector> {
    if classify(body) != BodyClass::Irreducible {
        return Err(Error::NotIrreducible);
    }
    let cd = cones::spherical_centroid(&recession_cone(body))?;
    debug_assert!(has_balanced_direction(body, &cd));
    Ok(cd)
}

/// cl(nc(K)) = polar of the recession cone.
pub fn normal_cone_closure(body: &VBody) -> Result<PolyhedralCone> {
    recession_cone(body).polar()
}

/// Total curvature: spherical measure of the closed unit normal cone.
///
/// Exact through the polar within the dimension cap; Monte-Carlo sampling of
/// finite-support directions beyond it.
pub fn total_curvature(body: &VBody) -> f64 {
    match normal_cone_closure(body) {
        Ok(ncc) => cones::spherical_measure(&ncc),
        Err(_) => total_curvature_mc(body, 200_000, 0).0,
    }
}

/// Monte-Carlo total curvature via support sampling, with standard error.
pub fn total_curvature_mc(body: &VBody, samples: usize, seed: u64) -> (f64, f64) {
    let dirs = crate::cones::sphere::sample_sphere(body.dim, samples, seed);
    let hits = crate::exec::map_slice(&dirs, |d| {
        let u = UnitVector::new_unchecked(d.clone());
        if support_value(body, &u).is_finite() { 1u64 } else { 0u64 }
    });
    let k: u64 = hits.iter().sum();
    let p = k as f64 / samples as f64;
    let omega = crate::geom::sphere_surface_measure(body.dim);
    (omega * p, omega * (p * (1.0 - p) / samples as f64).sqrt())
}

/// Outward facet hyperplanes of the body, via double description of the
/// homogenization cone over (K, 1).
pub fn facet_hyperplanes(body: &VBody) -> Result<Vec<Hyperplane>> {
    let n = body.dim;
    let lift = |v: &Vector, last: f64| {
        let mut c = v.coords().to_vec();
        c.push(last);
        Vector::new(c)
    };
    let mut rays = Vec::new();
    for p in &body.points {
        rays.push(lift(p, 1.0));
    }
    for r in &body.rays {
        rays.push(lift(r, 0.0));
    }
    let lines: Vec<Vector> = body.lines.iter().map(|l| lift(l, 0.0)).collect();
    let hom = PolyhedralCone::from_generators(n + 1, rays, lines)?;
    let mut out = Vec::new();
    for f in hom.facet_normals()? {
        let a = Vector::new(f.coords()[..n].to_vec());
        let na = a.norm();
        if na <= 1e-9 {
            continue; // the facet cutting the lifted apex, not a facet of K
        }
        let normal = normalize(&a.scale(1.0 / na))?;
        let offset = -f[n] / na;
        out.push(Hyperplane::new(normal, offset));
    }
    Ok(out)
}

/// Set equality through mutual membership of generators.
pub fn bodies_equal_as_sets(a: &VBody, b: &VBody, tol: f64) -> bool {
    let inside = |x: &VBody, y: &VBody| {
        let rc_y = recession_cone(y);
        x.points.iter().all(|p| y.contains(p, tol))
            && x.rays.iter().all(|r| rc_y.contains(r))
            && x.lines.iter().all(|l| rc_y.contains(l) && rc_y.contains(&l.scale(-1.0)))
    };
    inside(a, b) && inside(b, a)
}

/// Extreme-point pruning: exact hull in the plane, support seeding plus
/// nearest-point filtering in higher dimensions, then an LP minimality pass
/// for moderate sizes.
fn prune_points(points: Vec<Vector>, rays: &[Vector], lines: &[Vector]) -> Vec<Vector> {
    let tol = tol_geom();
    let mut pts = dedup_points(points, tol);
    if pts.len() > 2 {
        let effective_dim = rank_of(
            &pts[1..].iter().map(|p| p.sub(&pts[0])).collect::<Vec<_>>(),
            tol,
        );
        if effective_dim == 2 {
            pts = planar_hull(pts);
        } else if effective_dim > 2 && pts.len() > 32 {
            pts = hull_filter(pts);
        }
    }
    // LP minimality against the remaining generators.
    if pts.len() <= 512 {
        let mut i = 0;
        while i < pts.len() && pts.len() > 1 {
            let mut others = pts.clone();
            let p = others.remove(i);
            if lp::body_contains(&others, rays, lines, &p, tol) {
                pts.remove(i);
            } else {
                i += 1;
            }
        }
    }
    sort_points(&mut pts);
    pts
}

fn dedup_points(points: Vec<Vector>, tol: f64) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::with_capacity(points.len());
    for p in points {
        let scale = 1.0 + p.norm();
        if !out.iter().any(|q| q.dist(&p) <= tol * scale) {
            out.push(p);
        }
    }
    out
}

/// Exact extreme points of a planar point cloud (monotone chain), carried
/// out inside the 2-plane the points span.
fn planar_hull(pts: Vec<Vector>) -> Vec<Vector> {
    let tol = tol_geom();
    let origin = pts[0].clone();
    let dirs: Vec<Vector> = pts[1..].iter().map(|p| p.sub(&origin)).collect();
    let basis = crate::geom::orthonormalize(&dirs, tol);
    if basis.len() < 2 {
        // Degenerate (collinear): keep the two farthest points.
        return segment_hull(pts);
    }
    let mut planar: Vec<(f64, f64, usize)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let d = p.sub(&origin);
            (d.dot(&basis[0]), d.dot(&basis[1]), i)
        })
        .collect();
    planar.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let cross = |o: &(f64, f64, usize), a: &(f64, f64, usize), b: &(f64, f64, usize)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let scale: f64 = planar
        .iter()
        .map(|p| p.0.abs().max(p.1.abs()))
        .fold(1.0, f64::max);
    let eps = tol * scale * scale;
    let chain = |iter: &mut dyn Iterator<Item = &(f64, f64, usize)>| {
        let mut hull: Vec<(f64, f64, usize)> = Vec::new();
        for p in iter {
            while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= eps {
                hull.pop();
            }
            hull.push(*p);
        }
        hull
    };
    let lower = chain(&mut planar.iter());
    let upper = chain(&mut planar.iter().rev());
    let mut keep: Vec<usize> = lower
        .iter()
        .take(lower.len().saturating_sub(1))
        .chain(upper.iter().take(upper.len().saturating_sub(1)))
        .map(|h| h.2)
        .collect();
    keep.sort_unstable();
    keep.dedup();
    keep.into_iter().map(|i| pts[i].clone()).collect()
}

fn segment_hull(pts: Vec<Vector>) -> Vec<Vector> {
    let mut best = (0usize, 1usize, 0.0f64);
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = pts[i].dist(&pts[j]);
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    vec![pts[best.0].clone(), pts[best.1].clone()]
}

/// Keeps a superset of the extreme points: support-direction seeding, then a
/// nearest-point test of each remaining candidate against the kept hull.
fn hull_filter(pts: Vec<Vector>) -> Vec<Vector> {
    let dim = pts[0].dim();
    let dirs = crate::cones::sphere::sample_sphere(dim, 64 * dim, 1);
    let mut keep_idx: Vec<usize> = Vec::new();
    for d in &dirs {
        let mut best = 0usize;
        let mut best_val = f64::NEG_INFINITY;
        for (i, p) in pts.iter().enumerate() {
            let v = p.dot(d);
            if v > best_val {
                best_val = v;
                best = i;
            }
        }
        keep_idx.push(best);
    }
    keep_idx.sort_unstable();
    keep_idx.dedup();
    let mut kept: Vec<Vector> = keep_idx.iter().map(|&i| pts[i].clone()).collect();
    let keep_set: std::collections::BTreeSet<usize> = keep_idx.into_iter().collect();
    let centroid = {
        let mut c = Vector::zeros(dim);
        for p in &pts {
            c = c.add(p);
        }
        c.scale(1.0 / pts.len() as f64)
    };
    let mut rest: Vec<(f64, usize)> = (0..pts.len())
        .filter(|i| !keep_set.contains(i))
        .map(|i| (pts[i].dist(&centroid), i))
        .collect();
    rest.sort_by(|a, b| b.0.total_cmp(&a.0));
    let tol = tol_geom();
    for (_, i) in rest {
        let p = &pts[i];
        let (d, _) = nearest_point_to_hull(p, &kept);
        if d > tol * (1.0 + p.norm()) {
            kept.push(p.clone());
        }
    }
    kept
}

fn sort_points(pts: &mut [Vector]) {
    pts.sort_by(|a, b| {
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

    fn unit(c: &[f64]) -> UnitVector {
        normalize(&v(c)).unwrap()
    }

    pub(crate) fn wedge() -> VBody {
        // {x <= 0, y >= 0}: point o, rays -e1 and e2.
        VBody::new(2, vec![v(&[0.0, 0.0])], vec![v(&[-1.0, 0.0]), v(&[0.0, 1.0])], vec![]).unwrap()
    }

    fn upper_half_plane() -> VBody {
        VBody::new(2, vec![v(&[0.0, 0.0])], vec![v(&[0.0, 1.0])], vec![v(&[1.0, 0.0])]).unwrap()
    }

    fn unit_square() -> VBody {
        VBody::from_points(
            2,
            vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])],
        )
        .unwrap()
    }

    #[test]
    fn recession_cone_examples() {
        let half_line = VBody::new(2, vec![v(&[0.0, 0.0])], vec![v(&[0.0, 1.0])], vec![]).unwrap();
        let rc = recession_cone(&half_line);
        assert_eq!(rc.rays().len(), 1);
        assert!(recession_cone(&unit_square()).is_zero());
        let h = upper_half_plane();
        let rc = recession_cone(&h);
        assert!(rc.contains(&v(&[3.0, 1.0])));
        assert!(!rc.contains(&v(&[0.0, -1.0])));
    }

    #[test]
    fn support_value_examples() {
        let h = upper_half_plane();
        assert_relative_eq!(support_value(&h, &unit(&[0.0, -1.0])), 0.0, epsilon = 1e-12);
        assert!(support_value(&h, &unit(&[0.0, 1.0])).is_infinite());
        let sq = unit_square();
        assert_relative_eq!(
            support_value(&sq, &unit(&[1.0, 1.0])),
            2f64.sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn face_examples() {
        let w = wedge();
        let f = face(&w, &unit(&[1.0, -1.0])).unwrap();
        assert_eq!(f.body.points().len(), 1);
        assert!(f.body.points()[0].norm() <= 1e-12);
        assert!(f.body.rays().is_empty());

        let sq = unit_square();
        let f = face(&sq, &unit(&[1.0, 0.0])).unwrap();
        assert_eq!(f.body.points().len(), 2);

        let h = upper_half_plane();
        let f = face(&h, &unit(&[0.0, -1.0])).unwrap();
        assert_eq!(f.body.lines().len(), 1);
        assert!(face(&h, &unit(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn minkowski_sum_examples() {
        let seg_x = VBody::from_points(2, vec![v(&[0.0, 0.0]), v(&[1.0, 0.0])]).unwrap();
        let seg_y = VBody::from_points(2, vec![v(&[0.0, 0.0]), v(&[0.0, 1.0])]).unwrap();
        let sum = minkowski_sum(&seg_x, &seg_y).unwrap();
        assert!(bodies_equal_as_sets(&sum, &unit_square(), 1e-9));
        assert_eq!(sum.points().len(), 4);

        // K + {o} = K.
        let origin = VBody::from_points(2, vec![v(&[0.0, 0.0])]).unwrap();
        let w = wedge();
        let same = minkowski_sum(&w, &origin).unwrap();
        assert!(bodies_equal_as_sets(&same, &w, 1e-9));

        // Opposite half-lines sum to the convex region between them.
        let l = VBody::new(2, vec![v(&[0.0, 0.0])], vec![v(&[-1.0, 0.0])], vec![]).unwrap();
        let lt = |t: f64| {
            VBody::new(2, vec![v(&[0.0, 0.0])], vec![normalize(&v(&[1.0, t])).unwrap().into_vector()], vec![])
                .unwrap()
        };
        let s = minkowski_sum(&l, &lt(0.5)).unwrap();
        assert_eq!(classify(&s), BodyClass::Irreducible);
        assert!(s.contains(&v(&[0.0, 0.2]), 1e-9));
        assert!(!s.contains(&v(&[0.0, -0.2]), 1e-9));
        // At t = 0 the sum degenerates to the x-axis line.
        let s0 = minkowski_sum(&l, &lt(0.0)).unwrap();
        assert_eq!(classify(&s0), BodyClass::Cylinder(1));
    }

    #[test]
    fn motzkin_and_classify_examples() {
        let h = upper_half_plane();
        let (ol, l) = motzkin_decompose(&h).unwrap();
        assert_eq!(l.rank(), 1);
        assert!(ol.lines().is_empty());
        assert_eq!(ol.rays().len(), 1);

        let w = wedge();
        let (ol, l) = motzkin_decompose(&w).unwrap();
        assert_eq!(l.rank(), 0);
        assert!(bodies_equal_as_sets(&ol, &w, 1e-9));

        let slab = VBody::new(
            2,
            vec![v(&[0.0, 0.0]), v(&[0.0, 1.0])],
            vec![],
            vec![v(&[1.0, 0.0])],
        )
        .unwrap();
        assert_eq!(classify(&slab), BodyClass::Cylinder(1));
        assert_eq!(classify(&unit_square()), BodyClass::Bounded);
        assert_eq!(classify(&w), BodyClass::Irreducible);
        let (ol, l) = motzkin_decompose(&slab).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(ol.points().len(), 2);
    }

    #[test]
    fn k_plus_examples() {
        assert!(is_k_plus(&wedge()));
        assert!(!is_k_plus(&upper_half_plane()));
        assert!(!is_k_plus(&unit_square()));
    }

    #[test]
    fn balanced_support_examples() {
        let w = wedge();
        assert!(has_balanced_support(&w, &unit(&[-1.0, 1.0])));
        let h = upper_half_plane();
        assert!(has_balanced_support(&h, &unit(&[0.0, 1.0])));
        let slab = VBody::new(
            2,
            vec![v(&[0.0, 0.0]), v(&[0.0, 1.0])],
            vec![],
            vec![v(&[1.0, 0.0])],
        )
        .unwrap();
        assert!(!has_balanced_support(&slab, &unit(&[1.0, 0.0])));
    }

    #[test]
    fn central_direction_examples() {
        let w = wedge();
        let cd = central_direction(&w).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!(cd.as_ref().dist(&v(&[-s, s])) <= 1e-12);

        let vee = VBody::new(
            2,
            vec![v(&[0.0, 0.0])],
            vec![v(&[1.0, 1.0]), v(&[-1.0, 1.0])],
            vec![],
        )
        .unwrap();
        let cd = central_direction(&vee).unwrap();
        assert!(cd.as_ref().dist(&v(&[0.0, 1.0])) <= 1e-12);

        let cd = central_direction(&upper_half_plane()).unwrap();
        assert!(cd.as_ref().dist(&v(&[0.0, 1.0])) <= 1e-12);

        assert!(matches!(central_direction(&unit_square()), Err(Error::NotIrreducible)));
    }

    #[test]
    fn normal_cone_examples() {
        let ncc = normal_cone_closure(&unit_square()).unwrap();
        assert!(ncc.is_full_space());

        let ncc = normal_cone_closure(&upper_half_plane()).unwrap();
        assert_eq!(ncc.rays().len(), 1);
        assert!(ncc.rays()[0].dist(&v(&[0.0, -1.0])) <= 1e-12);

        let ncc = normal_cone_closure(&wedge()).unwrap();
        let expect =
            PolyhedralCone::from_generators(2, vec![v(&[1.0, 0.0]), v(&[0.0, -1.0])], vec![]).unwrap();
        assert!(ncc.equals_as_set(&expect));
    }

    #[test]
    fn total_curvature_examples() {
        assert_relative_eq!(total_curvature(&unit_square()), 2.0 * PI, epsilon = 1e-9);
        let h3 = VBody::new(
            3,
            vec![v(&[0.0, 0.0, 0.0])],
            vec![v(&[0.0, 0.0, 1.0])],
            vec![v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])],
        )
        .unwrap();
        assert_relative_eq!(total_curvature(&h3), 0.0, epsilon = 1e-12);
        assert_relative_eq!(total_curvature(&wedge()), PI / 2.0, epsilon = 1e-9);
    }

    #[test]
    fn facet_hyperplanes_of_square_and_wedge() {
        let hs = facet_hyperplanes(&unit_square()).unwrap();
        assert_eq!(hs.len(), 4);
        for p in unit_square().points() {
            for h in &hs {
                assert!(h.signed_distance(p) <= 1e-9);
            }
        }
        let hs = facet_hyperplanes(&wedge()).unwrap();
        assert_eq!(hs.len(), 2);
        let normal_cone = PolyhedralCone::from_generators(
            2,
            hs.iter().map(|h| h.normal.as_ref().clone()).collect(),
            vec![],
        )
        .unwrap();
        assert!(normal_cone.equals_as_set(&normal_cone_closure(&wedge()).unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let w = wedge();
        let s = serde_json::to_string(&w.to_json()).unwrap();
        let back = VBody::from_json_str(&s).unwrap();
        assert!(bodies_equal_as_sets(&w, &back, 1e-9));
        assert_eq!(back.points().len(), w.points().len());

        assert!(matches!(
            VBody::from_json_str(r#"{"dim":2,"points":[]}"#),
            Err(Error::EmptyPoints)
        ));
        assert!(matches!(
            VBody::from_json_str(r#"{"dim":2,"points":[[0,0]],"rays":[[0,0]]}"#),
            Err(Error::Degenerate(_))
        ));
        assert!(VBody::from_json_str("{").is_err());
    }

    #[test]
    fn pruning_keeps_extreme_points_only() {
        let body = VBody::from_points(
            2,
            vec![
                v(&[0.0, 0.0]),
                v(&[1.0, 0.0]),
                v(&[0.0, 1.0]),
                v(&[1.0, 1.0]),
                v(&[0.5, 0.5]),
                v(&[0.25, 0.5]),
            ],
        )
        .unwrap();
        assert_eq!(body.points().len(), 4);

        // A point swallowed by a ray is pruned too.
        let shadowed = VBody::new(
            2,
            vec![v(&[0.0, 0.0]), v(&[0.0, 2.0])],
            vec![v(&[0.0, 1.0])],
            vec![],
        )
        .unwrap();
        assert_eq!(shadowed.points().len(), 1);
    }
}
