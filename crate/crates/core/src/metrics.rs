//! Distances between convex sets: exact nearest-point Hausdorff for compact
//! polytopes, sampled bounded-Hausdorff through the stereographic pullback,
//! the asymptotic distance, and the normal-cone Hausdorff radius.

use crate::bodies::{self, BodyClass, VBody};
use crate::cones::sphere;
use crate::error::{Error, Result};
use crate::exec;
use crate::geom::{stereo_inverse, UnitVector, Vector};
use crate::lp;

/// Sampling parameters for the bounded-Hausdorff pullback grid.
#[derive(Clone, Copy, Debug)]
pub struct MetricsConfig {
    /// Truncation radius of the boundary ray-shoot grid.
    pub r_max: f64,
    /// Number of grid directions per body.
    pub grid_directions: usize,
    /// Number of geometric radial levels between 1 and `r_max`.
    pub radial_levels: usize,
    /// Convergence tolerance of the nearest-point iteration.
    pub tol: f64,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig { r_max: 1e3, grid_directions: 180, radial_levels: 12, tol: 1e-9 }
    }
}

/// Deterministic body samples up to radius `r_max`, for pullback metrics.
#[derive(Clone, Debug)]
pub struct SampledSet {
    pub samples: Vec<Vector>,
    pub unbounded: bool,
}

const MAX_NEAREST_ITERS: usize = 10_000;

/// Distance and attaining point from `x` to the convex hull of `verts`.
///
/// Wolfe's minimum-norm-point scheme: Frank-Wolfe steps with a support
/// oracle over the vertex list, made fully corrective over the active set.
pub(crate) fn nearest_point_to_hull(x: &Vector, verts: &[Vector]) -> (f64, Vector) {
    nearest_point_impl(x, verts, MAX_NEAREST_ITERS).0
}

fn nearest_point_impl(x: &Vector, verts: &[Vector], max_iters: usize) -> ((f64, Vector), bool) {
    assert!(!verts.is_empty());
    let shifted: Vec<Vector> = verts.iter().map(|v| v.sub(x)).collect();
    let scale = 1.0 + shifted.iter().map(|w| w.norm_sq()).fold(0.0, f64::max);

    let mut start = 0usize;
    let mut best = f64::INFINITY;
    for (i, w) in shifted.iter().enumerate() {
        let n = w.norm_sq();
        if n < best {
            best = n;
            start = i;
        }
    }
    let mut active: Vec<usize> = vec![start];
    let mut coef: Vec<f64> = vec![1.0];
    let mut y = shifted[start].clone();
    let mut converged = false;

    for _ in 0..max_iters {
        let mut j = 0usize;
        let mut val = f64::INFINITY;
        for (i, w) in shifted.iter().enumerate() {
            let d = y.dot(w);
            if d < val {
                val = d;
                j = i;
            }
        }
        let gap = y.norm_sq() - val;
        if gap <= 1e-14 * scale {
            converged = true;
            break;
        }
        if !active.contains(&j) {
            active.push(j);
            coef.push(0.0);
        }

        // Fully corrective inner loop over the active set.
        loop {
            let beta = affine_min_norm(&shifted, &active);
            if beta.iter().all(|b| *b >= -1e-12) {
                let keep: Vec<(usize, f64)> = active
                    .iter()
                    .zip(&beta)
                    .filter(|(_, b)| **b > 1e-14)
                    .map(|(i, b)| (*i, *b))
                    .collect();
                let total: f64 = keep.iter().map(|(_, b)| b).sum();
                active = keep.iter().map(|(i, _)| *i).collect();
                coef = keep.iter().map(|(_, b)| b / total).collect();
                break;
            }
            // Step from coef toward beta until a coefficient hits zero.
            let mut theta = 1.0f64;
            for (c, b) in coef.iter().zip(&beta) {
                if b < c {
                    theta = theta.min(c / (c - b));
                }
            }
            let mixed: Vec<f64> =
                coef.iter().zip(&beta).map(|(c, b)| c + theta * (b - c)).collect();
            let keep: Vec<(usize, f64)> = active
                .iter()
                .zip(&mixed)
                .filter(|(_, m)| **m > 1e-14)
                .map(|(i, m)| (*i, *m))
                .collect();
            if keep.is_empty() {
                // Numerically stuck; fall back to the best single vertex.
                active = vec![j];
                coef = vec![1.0];
                break;
            }
            let total: f64 = keep.iter().map(|(_, m)| m).sum();
            active = keep.iter().map(|(i, _)| *i).collect();
            coef = keep.iter().map(|(_, m)| m / total).collect();
        }

        y = Vector::zeros(x.dim());
        for (i, c) in active.iter().zip(&coef) {
            y = y.axpy(*c, &shifted[*i]);
        }
    }
    ((y.norm(), x.add(&y)), converged)
}

/// Minimizer of |sum beta_i w_i| subject to sum beta = 1 over the active set.
fn affine_min_norm(w: &[Vector], active: &[usize]) -> Vec<f64> {
    use nalgebra::DMatrix;
    let k = active.len();
    if k == 1 {
        return vec![1.0];
    }
    let mut kkt = DMatrix::<f64>::zeros(k + 1, k + 1);
    for (a, &ia) in active.iter().enumerate() {
        for (b, &ib) in active.iter().enumerate() {
            kkt[(a, b)] = w[ia].dot(&w[ib]);
        }
        kkt[(a, k)] = 1.0;
        kkt[(k, a)] = 1.0;
    }
    let mut rhs = nalgebra::DVector::<f64>::zeros(k + 1);
    rhs[k] = 1.0;
    if let Some(sol) = kkt.clone().lu().solve(&rhs) {
        if sol.iter().all(|v| v.is_finite()) {
            return sol.iter().take(k).copied().collect();
        }
    }
    // Degenerate Gram matrix: pseudo-inverse route.
    let svd = kkt.svd(true, true);
    match svd.solve(&rhs, 1e-12) {
        Ok(sol) => sol.iter().take(k).copied().collect(),
        Err(_) => vec![1.0 / k as f64; k],
    }
}

/// Euclidean distance from a point to the body.
///
/// Compact bodies resolve exactly over their vertex list; unbounded ones are
/// truncated along rays and lines, with the truncation radius grown until
/// the answer stabilizes.
pub fn point_to_body_distance(x: &Vector, body: &VBody, cfg: &MetricsConfig) -> Result<f64> {
    if x.dim() != body.dim() {
        return Err(Error::DimMismatch { left: x.dim(), right: body.dim() });
    }
    if body.contains(x, cfg.tol) {
        return Ok(0.0);
    }
    if body.rays().is_empty() && body.lines().is_empty() {
        let ((d, _), converged) = nearest_point_impl(x, body.points(), MAX_NEAREST_ITERS);
        return if converged { Ok(d) } else { Err(Error::NoConverge) };
    }
    let base = 1.0 + x.norm() + body.points().iter().map(|p| p.norm()).fold(0.0, f64::max);
    let mut radius = 4.0 * base;
    let mut prev = f64::INFINITY;
    for _ in 0..8 {
        let verts = truncated_vertices(body, radius);
        let ((d, _), converged) = nearest_point_impl(x, &verts, MAX_NEAREST_ITERS);
        if !converged {
            return Err(Error::NoConverge);
        }
        if (prev - d).abs() <= cfg.tol * (1.0 + d) {
            return Ok(d);
        }
        prev = d;
        radius *= 4.0;
    }
    Err(Error::NoConverge)
}

fn truncated_vertices(body: &VBody, radius: f64) -> Vec<Vector> {
    let mut verts = body.points().to_vec();
    for p in body.points() {
        for r in body.rays() {
            verts.push(p.axpy(radius, r));
        }
        for l in body.lines() {
            verts.push(p.axpy(radius, l));
            verts.push(p.axpy(-radius, l));
        }
    }
    verts
}

/// Hausdorff distance between two compact polytopes, exact over vertices.
pub fn hausdorff_compact(a: &VBody, b: &VBody, cfg: &MetricsConfig) -> Result<f64> {
    if bodies::classify(a) != BodyClass::Bounded || bodies::classify(b) != BodyClass::Bounded {
        return Err(Error::UnboundedInput);
    }
    // Distance-to-convex is convex in the point, so the directed distance is
    // attained at a vertex.
    let dir = |from: &VBody, to: &VBody| -> f64 {
        let dists = exec::map_slice(from.points(), |p| nearest_point_to_hull(p, to.points()).0);
        dists.into_iter().fold(0.0, f64::max)
    };
    let _ = cfg;
    Ok(dir(a, b).max(dir(b, a)))
}

/// Deterministic boundary/body sample grid out to `cfg.r_max`.
///
/// The grid is anchored at the body point nearest the origin: the
/// stereographic pullback is finest near the origin of R^n, so that is
/// where the ray fan has to be densest. Bodies sharing geometry near the
/// origin then sample it with identical grid points.
pub fn sample_body(body: &VBody, cfg: &MetricsConfig) -> SampledSet {
    let n = body.dim();
    let origin = Vector::zeros(n);
    let anchor = if body.contains(&origin, cfg.tol) {
        origin
    } else {
        let reach = 4.0 * (1.0 + body.points().iter().map(|p| p.norm()).fold(0.0, f64::max));
        let verts = truncated_vertices(body, reach);
        nearest_point_to_hull(&origin, &verts).1
    };

    let dirs = grid_directions(n, cfg.grid_directions);
    let levels: Vec<f64> = (0..cfg.radial_levels)
        .map(|j| cfg.r_max.powf(j as f64 / (cfg.radial_levels.max(2) - 1) as f64))
        .collect();

    let per_dir: Vec<Vec<Vector>> = exec::map_slice(&dirs, |d| {
        let mut out = Vec::new();
        let tmax = lp::ray_shoot(body.points(), body.rays(), body.lines(), &anchor, d)
            .unwrap_or(f64::INFINITY);
        let tb = tmax.min(cfg.r_max);
        out.push(anchor.axpy(tb, d));
        for &r in &levels {
            if r < tb {
                out.push(anchor.axpy(r, d));
            }
        }
        out
    });

    let mut samples = vec![anchor.clone()];
    for p in body.points() {
        if p.sub(&anchor).norm() <= cfg.r_max {
            samples.push(p.clone());
        }
    }
    for chunk in per_dir {
        samples.extend(chunk);
    }
    let unbounded = !(body.rays().is_empty() && body.lines().is_empty());
    SampledSet { samples, unbounded }
}

fn grid_directions(n: usize, count: usize) -> Vec<Vector> {
    match n {
        1 => vec![Vector::new(vec![1.0]), Vector::new(vec![-1.0])],
        2 => (0..count)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
                Vector::new(vec![a.cos(), a.sin()])
            })
            .collect(),
        3 => {
            // Fibonacci sphere lattice.
            let golden = (1.0 + 5f64.sqrt()) / 2.0;
            (0..count)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let a = 2.0 * std::f64::consts::PI * i as f64 / golden;
                    Vector::new(vec![r * a.cos(), r * a.sin(), z])
                })
                .collect()
        }
        _ => sphere::sample_sphere(n, count, 20),
    }
}

/// Stereographic pullback of a sample set to S^n, with the pole appended
/// for unbounded sets (the closure of the pullback contains it).
pub fn pullback(set: &SampledSet) -> Vec<Vector> {
    let mut out: Vec<Vector> =
        set.samples.iter().map(|s| stereo_inverse(s).into_vector()).collect();
    if set.unbounded {
        let dim = out[0].dim();
        let mut pole = vec![0.0; dim];
        pole[dim - 1] = 1.0;
        out.push(Vector::new(pole));
    }
    out
}

fn directed_sample_distance(from: &[Vector], to: &[Vector]) -> f64 {
    let mins = exec::map_slice(from, |p| {
        to.iter().map(|q| p.sub(q).norm_sq()).fold(f64::INFINITY, f64::min)
    });
    mins.into_iter().fold(0.0, f64::max).sqrt()
}

/// Hausdorff distance between two pullback sample sets on S^n.
pub fn sample_hausdorff(a: &[Vector], b: &[Vector]) -> f64 {
    directed_sample_distance(a, b).max(directed_sample_distance(b, a))
}

/// Bounded-Hausdorff distance: Hausdorff distance of the stereographic
/// pullbacks, on a deterministic grid.
pub fn bounded_hausdorff(a: &VBody, b: &VBody, cfg: &MetricsConfig) -> f64 {
    let pa = pullback(&sample_body(a, cfg));
    let pb = pullback(&sample_body(b, cfg));
    sample_hausdorff(&pa, &pb)
}

/// Asymptotic distance: bounded-Hausdorff of the bodies plus of their
/// recession cones (rendered as bodies through the origin).
pub fn asymptotic_distance(a: &VBody, b: &VBody, cfg: &MetricsConfig) -> f64 {
    let rc_body = |k: &VBody| {
        VBody::new(
            k.dim(),
            vec![Vector::zeros(k.dim())],
            k.rays().to_vec(),
            k.lines().to_vec(),
        )
        .expect("recession cone as body")
    };
    bounded_hausdorff(a, b, cfg) + bounded_hausdorff(&rc_body(a), &rc_body(b), cfg)
}

/// Spherical Hausdorff radius of the closed unit normal cone around -u:
/// the largest geodesic distance from the region to the point -u.
pub fn nc_hausdorff_radius(body: &VBody, u: &UnitVector) -> Result<f64> {
    let neg = UnitVector::new_unchecked(u.as_ref().scale(-1.0));
    if !bodies::support_value(body, &neg).is_finite() {
        return Err(Error::Unsupported);
    }
    let ncc = bodies::normal_cone_closure(body)?;
    let m = sphere::min_dot(&ncc, neg.as_ref());
    if !m.is_finite() {
        return Err(Error::Unsupported);
    }
    Ok(m.clamp(-1.0, 1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::VBody;
    use crate::geom::normalize;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    fn wedge() -> VBody {
        VBody::new(2, vec![v(&[0.0, 0.0])], vec![v(&[-1.0, 0.0]), v(&[0.0, 1.0])], vec![]).unwrap()
    }

    fn upper_half_plane() -> VBody {
        VBody::new(2, vec![v(&[0.0, 0.0])], vec![v(&[0.0, 1.0])], vec![v(&[1.0, 0.0])]).unwrap()
    }

    fn square(shift: f64) -> VBody {
        VBody::from_points(
            2,
            vec![
                v(&[shift, 0.0]),
                v(&[shift + 1.0, 0.0]),
                v(&[shift, 1.0]),
                v(&[shift + 1.0, 1.0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn point_distance_examples() {
        let cfg = MetricsConfig::default();
        let sq = square(0.0);
        assert_relative_eq!(
            point_to_body_distance(&v(&[0.5, 0.5]), &sq, &cfg).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            point_to_body_distance(&v(&[2.0, 0.5]), &sq, &cfg).unwrap(),
            1.0,
            epsilon = 1e-9
        );
        let h = upper_half_plane();
        assert_relative_eq!(
            point_to_body_distance(&v(&[0.0, -3.0]), &h, &cfg).unwrap(),
            3.0,
            epsilon = 1e-7
        );
        // Distance to the wedge from deep inside the opposite quadrant.
        let w = wedge();
        assert_relative_eq!(
            point_to_body_distance(&v(&[3.0, -4.0]), &w, &cfg).unwrap(),
            5.0,
            epsilon = 1e-7
        );
    }

    #[test]
    fn hausdorff_compact_examples() {
        let cfg = MetricsConfig::default();
        let a = square(0.0);
        assert_relative_eq!(hausdorff_compact(&a, &a, &cfg).unwrap(), 0.0, epsilon = 1e-12);
        assert_relative_eq!(
            hausdorff_compact(&a, &square(1.0), &cfg).unwrap(),
            1.0,
            epsilon = 1e-9
        );
        assert!(matches!(
            hausdorff_compact(&a, &wedge(), &cfg),
            Err(Error::UnboundedInput)
        ));
        // Discretized concentric disks.
        let disk = |r: f64| {
            VBody::from_points(
                2,
                (0..64)
                    .map(|i| {
                        let t = 2.0 * PI * i as f64 / 64.0;
                        v(&[r * t.cos(), r * t.sin()])
                    })
                    .collect(),
            )
            .unwrap()
        };
        let d = hausdorff_compact(&disk(1.0), &disk(2.0), &cfg).unwrap();
        assert!((d - 1.0).abs() <= 0.01, "d = {d}");
    }

    #[test]
    fn bounded_hausdorff_identity_and_symmetry() {
        let cfg = MetricsConfig { grid_directions: 90, radial_levels: 8, ..Default::default() };
        let w = wedge();
        assert_relative_eq!(bounded_hausdorff(&w, &w, &cfg), 0.0, epsilon = 1e-12);
        let h = upper_half_plane();
        let ab = bounded_hausdorff(&w, &h, &cfg);
        let ba = bounded_hausdorff(&h, &w, &cfg);
        assert_relative_eq!(ab, ba, epsilon = 1e-12);
        assert!(ab > 0.0);
    }

    #[test]
    fn asymptotic_distance_dominates() {
        let cfg = MetricsConfig { grid_directions: 90, radial_levels: 8, ..Default::default() };
        let w = wedge();
        let h = upper_half_plane();
        assert!(asymptotic_distance(&w, &h, &cfg) >= bounded_hausdorff(&w, &h, &cfg) - 1e-12);
        assert_relative_eq!(asymptotic_distance(&w, &w, &cfg), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn nc_radius_examples() {
        let e2 = normalize(&v(&[0.0, 1.0])).unwrap();
        let h = upper_half_plane();
        assert_relative_eq!(nc_hausdorff_radius(&h, &e2).unwrap(), 0.0, epsilon = 1e-12);

        let w = wedge();
        let cd = crate::bodies::central_direction(&w).unwrap();
        assert_relative_eq!(nc_hausdorff_radius(&w, &cd).unwrap(), PI / 4.0, epsilon = 1e-9);

        let sq = square(0.0);
        assert_relative_eq!(nc_hausdorff_radius(&sq, &e2).unwrap(), PI, epsilon = 1e-12);

        // Unsupported direction: slab along e1.
        let slab = VBody::new(
            2,
            vec![v(&[0.0, 0.0]), v(&[0.0, 1.0])],
            vec![],
            vec![v(&[1.0, 0.0])],
        )
        .unwrap();
        let e1 = normalize(&v(&[1.0, 0.0])).unwrap();
        assert!(matches!(nc_hausdorff_radius(&slab, &e1), Err(Error::Unsupported)));
    }

    #[test]
    fn doubling_rmax_is_stable() {
        let base = MetricsConfig { grid_directions: 120, radial_levels: 10, ..Default::default() };
        let big = MetricsConfig { r_max: 2e3, ..base };
        let w = wedge();
        let h = upper_half_plane();
        let d1 = bounded_hausdorff(&w, &h, &base);
        let d2 = bounded_hausdorff(&w, &h, &big);
        // Enlarging the window only adds far samples, which are tightly
        // clustered near the pole; the reported distance stays put up to
        // grid slack.
        assert!((d1 - d2).abs() <= 0.05, "d1 {d1} d2 {d2}");
    }
}
