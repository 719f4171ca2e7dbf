//! Spherical measure, spherical centroid and extremal dot products of
//! polyhedral cones intersected with the unit sphere.
//!
//! Dimensions 2 and 3 have exact paths (arc length, lune area, spherical
//! polygon excess via the solid-angle fan; centroid via the boundary
//! line-integral of the vector area). Higher dimensions fall back to
//! seeded Monte-Carlo over normalized Gaussian directions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec;
use crate::geom::{normalize, orthonormalize, sphere_surface_measure, UnitVector, Vector};
use crate::lp;
use crate::tol::{tol_geom, TOL_ZERO};

use super::{dd, PolyhedralCone, DEFAULT_DIM_CAP};

pub(crate) const DEFAULT_MC_SAMPLES: usize = 200_000;

/// Hausdorff measure of cone intersect S^{n-1}, exact for n <= 3.
pub(crate) fn measure(cone: &PolyhedralCone) -> f64 {
    let n = cone.dim();
    let nl = cone.lines().len();
    let rays = cone.rays();
    if rays.is_empty() {
        // A subspace: full measure only when it is the whole space; S^0 is
        // counted in dimension one.
        return if nl == n {
            sphere_surface_measure(n)
        } else if n == 1 {
            0.0
        } else {
            0.0
        };
    }
    let q = orthonormalize(rays, tol_geom()).len();
    if nl + q < n {
        return 0.0; // lower-dimensional: measure zero in S^{n-1}
    }
    match n {
        1 => 1.0, // a single point of S^0
        2 => {
            if nl == 1 {
                std::f64::consts::PI
            } else {
                debug_assert_eq!(rays.len(), 2);
                angle_between(&rays[0], &rays[1])
            }
        }
        3 => match nl {
            2 => 2.0 * std::f64::consts::PI, // half-space: a hemisphere
            1 => {
                debug_assert_eq!(rays.len(), 2);
                2.0 * angle_between(&rays[0], &rays[1]) // lune
            }
            _ => polygon_area(rays),
        },
        _ => measure_mc(cone, DEFAULT_MC_SAMPLES, 0).0,
    }
}

/// Monte-Carlo measure with standard error: uniform directions are drawn as
/// normalized Gaussians from a fixed-seed ChaCha stream.
pub(crate) fn measure_mc(cone: &PolyhedralCone, samples: usize, seed: u64) -> (f64, f64) {
    let n = cone.dim();
    let dirs = sample_sphere(n, samples, seed);
    let facets = if n <= DEFAULT_DIM_CAP { cone.facet_normals().ok().map(|f| f.to_vec()) } else { None };
    let tol = tol_geom();
    let hits = exec::map_slice(&dirs, |d| {
        let inside = match &facets {
            Some(fs) => fs.iter().all(|h| h.dot(d) <= tol),
            None => lp::cone_contains(cone.rays(), cone.lines(), d, tol),
        };
        if inside { 1u64 } else { 0u64 }
    });
    let k: u64 = hits.iter().sum();
    let p = k as f64 / samples as f64;
    let omega = sphere_surface_measure(n);
    let std_err = omega * (p * (1.0 - p) / samples as f64).sqrt();
    (omega * p, std_err)
}

/// Exact spherical centroid inside the affine hull of the cone.
pub(crate) fn centroid(cone: &PolyhedralCone) -> Result<UnitVector> {
    let rays = cone.rays();
    if rays.is_empty() {
        return Err(Error::NotProper);
    }
    // The line part integrates out by symmetry; the centroid is the centroid
    // of the pointed part inside its own span.
    let span = orthonormalize(rays, tol_geom());
    match span.len() {
        1 => normalize(&rays[0]),
        2 => {
            debug_assert_eq!(rays.len(), 2);
            normalize(&rays[0].add(&rays[1]))
        }
        3 => {
            let coords = to_coords(rays, &span);
            let dir3 = polygon_centroid(&coords);
            normalize(&from_coords(&dir3, &span))
        }
        _ => centroid_mc(cone, DEFAULT_MC_SAMPLES, 0).map(|(u, _)| u),
    }
}

/// Monte-Carlo centroid inside the span of the pointed part, with an
/// estimate of the angular standard error.
pub(crate) fn centroid_mc(
    cone: &PolyhedralCone,
    samples: usize,
    seed: u64,
) -> Result<(UnitVector, f64)> {
    let rays = cone.rays();
    if rays.is_empty() {
        return Err(Error::NotProper);
    }
    let tol = tol_geom();
    let span = orthonormalize(rays, tol);
    let q = span.len();
    let rays_c: Vec<Vector> = to_coords_each(rays, &span);

    let facets = facet_normals_in_span(&rays_c, q);
    let dirs = sample_sphere(q, samples, seed);
    let kept: Vec<Option<&Vector>> = exec::map_slice(&dirs, |d| {
        let inside = match &facets {
            Some(fs) => fs.iter().all(|h| h.dot(d) <= tol),
            None => lp::cone_contains(&rays_c, &[], d, tol),
        };
        if inside { Some(d) } else { None }
    });

    let mut mean = Vector::zeros(q);
    let mut count = 0usize;
    for d in kept.into_iter().flatten() {
        mean = mean.add(d);
        count += 1;
    }
    if count == 0 {
        return Err(Error::Degenerate("no Monte-Carlo samples hit the cone".into()));
    }
    mean = mean.scale(1.0 / samples as f64);
    let norm = mean.norm();
    if norm <= TOL_ZERO {
        return Err(Error::Degenerate("Monte-Carlo centroid vanished".into()));
    }
    // Per-component variance is bounded by the hit fraction; the angular
    // error of the normalized mean is approximately sem / |mean|.
    let p = count as f64 / samples as f64;
    let sem = (p / samples as f64).sqrt();
    let ang_err = sem / norm;
    let u = normalize(&from_coords(&mean, &span))?;
    Ok((u, ang_err))
}

/// Minimum of <x, q> over cone intersect S^{n-1}; +infinity for {o}.
///
/// Splits the cone as lines + pointed part; the pointed minimum recurses
/// through facets, the mixed optimum has a closed form.
pub(crate) fn min_dot(cone: &PolyhedralCone, q: &Vector) -> f64 {
    if cone.is_zero() {
        return f64::INFINITY;
    }
    let a = q.project_onto(cone.lines()).norm();
    if cone.rays().is_empty() {
        return -a;
    }
    let mp = pointed_min_dot(cone.rays(), q);
    if cone.lines().is_empty() {
        mp
    } else if mp >= 0.0 {
        -a
    } else {
        -(a * a + mp * mp).sqrt()
    }
}

fn pointed_min_dot(rays: &[Vector], q: &Vector) -> f64 {
    let tol = tol_geom();
    let span = orthonormalize(rays, tol);
    let qp = {
        let coords: Vec<f64> = span.iter().map(|b| q.dot(b)).collect();
        Vector::new(if coords.is_empty() { vec![0.0] } else { coords })
    };
    let qn = qp.norm();
    if qn <= TOL_ZERO {
        return 0.0;
    }
    let rays_c = to_coords_each(rays, &span);
    if lp::cone_contains(&rays_c, &[], &qp.scale(-1.0), tol) {
        return -qn;
    }
    if rays_c.len() == 1 || span.len() == 1 {
        return rays_c.iter().map(|r| r.dot(&qp)).fold(f64::INFINITY, f64::min);
    }
    let quo = span.len();
    match facet_normals_in_span(&rays_c, quo) {
        Some(facets) => {
            let mut best = f64::INFINITY;
            for h in &facets {
                let sub: Vec<Vector> =
                    rays_c.iter().filter(|r| r.dot(h).abs() <= tol * 10.0).cloned().collect();
                if sub.is_empty() {
                    continue;
                }
                best = best.min(pointed_min_dot(&sub, &qp));
            }
            if best.is_finite() {
                best
            } else {
                rays_c.iter().map(|r| r.dot(&qp)).fold(f64::INFINITY, f64::min)
            }
        }
        // Above the exact cap: the ray minimum is a safe coarse answer.
        None => rays_c.iter().map(|r| r.dot(&qp)).fold(f64::INFINITY, f64::min),
    }
}

fn facet_normals_in_span(rays_c: &[Vector], dim: usize) -> Option<Vec<Vector>> {
    if dim > DEFAULT_DIM_CAP {
        return None;
    }
    let raw = dd::convert(dim, rays_c, DEFAULT_DIM_CAP).ok()?;
    let mut normals = raw.rays;
    for l in &raw.lines {
        normals.push(l.clone());
        normals.push(l.scale(-1.0));
    }
    Some(normals)
}

/// Signed area of the spherical polygon cut by a pointed full-dimensional
/// 3D cone, via the solid-angle fan from an interior direction.
fn polygon_area(rays: &[Vector]) -> f64 {
    let ordered = order_cyclically(rays);
    let hub = interior_direction(&ordered);
    let k = ordered.len();
    let mut total = 0.0;
    for i in 0..k {
        total += triangle_solid_angle(&hub, &ordered[i], &ordered[(i + 1) % k]);
    }
    total.abs()
}

/// Vector area integral of the spherical polygon (integral of x dA), via the
/// boundary line integral: each great-circle arc contributes its length
/// times the unit rotation axis.
fn polygon_centroid(rays: &[Vector]) -> Vector {
    let ordered = order_cyclically(rays);
    let hub = interior_direction(&ordered);
    let k = ordered.len();
    let mut integral = Vector::zeros(3);
    for i in 0..k {
        let a = &ordered[i];
        let b = &ordered[(i + 1) % k];
        let theta = angle_between(a, b);
        let axis = cross3(a, b);
        let n = axis.norm();
        if n <= TOL_ZERO {
            continue;
        }
        integral = integral.axpy(0.5 * theta / n, &axis);
    }
    if integral.dot(&hub) < 0.0 {
        integral = integral.scale(-1.0);
    }
    integral
}

/// Solid angle of the spherical triangle (a, b, c) by van Oosterom-Strackee.
fn triangle_solid_angle(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    let num = a.dot(&cross3(b, c));
    let den = 1.0 + a.dot(b) + b.dot(c) + a.dot(c);
    2.0 * num.atan2(den)
}

/// Extreme rays of a pointed full-dimensional 3D cone in boundary order.
fn order_cyclically(rays: &[Vector]) -> Vec<Vector> {
    let hub = interior_direction(rays);
    let basis = orthonormalize(
        &[hub.clone(), Vector::basis(3, 0), Vector::basis(3, 1), Vector::basis(3, 2)],
        tol_geom(),
    );
    let (a, b) = (&basis[1], &basis[2]);
    let mut keyed: Vec<(f64, Vector)> = rays
        .iter()
        .map(|r| (r.dot(b).atan2(r.dot(a)), r.clone()))
        .collect();
    keyed.sort_by(|x, y| x.0.total_cmp(&y.0));
    keyed.into_iter().map(|(_, r)| r).collect()
}

fn interior_direction(rays: &[Vector]) -> Vector {
    let mut sum = Vector::zeros(rays[0].dim());
    for r in rays {
        sum = sum.add(r);
    }
    let n = sum.norm();
    debug_assert!(n > TOL_ZERO, "pointed cone has an interior direction");
    sum.scale(1.0 / n)
}

fn cross3(a: &Vector, b: &Vector) -> Vector {
    Vector::new(vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

fn angle_between(a: &Vector, b: &Vector) -> f64 {
    let c = (a.dot(b) / (a.norm() * b.norm())).clamp(-1.0, 1.0);
    c.acos()
}

fn to_coords(vs: &[Vector], basis: &[Vector]) -> Vec<Vector> {
    to_coords_each(vs, basis)
}

fn to_coords_each(vs: &[Vector], basis: &[Vector]) -> Vec<Vector> {
    vs.iter()
        .map(|v| Vector::new(basis.iter().map(|b| v.dot(b)).collect()))
        .collect()
}

fn from_coords(c: &Vector, basis: &[Vector]) -> Vector {
    let mut out = Vector::zeros(basis[0].dim());
    for (i, b) in basis.iter().enumerate() {
        out = out.axpy(c[i], b);
    }
    out
}

/// `samples` points drawn uniformly on S^{n-1}, deterministically from the
/// seed. Drawn sequentially so the stream is independent of thread count.
pub(crate) fn sample_sphere(n: usize, samples: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let v = Vector::new((0..n).map(|_| gaussian(&mut rng)).collect());
        let norm = v.norm();
        if norm > 1e-6 {
            out.push(v.scale(1.0 / norm));
        }
    }
    out
}

/// Standard normal via Box-Muller, fed from the ChaCha stream.
fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u1: f64 = rng.gen::<f64>();
        let u2: f64 = rng.gen::<f64>();
        if u1 > f64::MIN_POSITIVE {
            return (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::PolyhedralCone;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    fn cone(dim: usize, rays: &[&[f64]], lines: &[&[f64]]) -> PolyhedralCone {
        PolyhedralCone::from_generators(
            dim,
            rays.iter().map(|r| v(r)).collect(),
            lines.iter().map(|l| v(l)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn lune_and_hemisphere_measures() {
        let half = cone(3, &[&[0.0, 0.0, 1.0]], &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert_relative_eq!(measure(&half), 2.0 * PI, epsilon = 1e-12);
        // Quarter lune around the z-axis line.
        let lune = cone(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]], &[&[0.0, 0.0, 1.0]]);
        assert_relative_eq!(measure(&lune), 2.0 * (PI / 2.0), epsilon = 1e-12);
    }

    #[test]
    fn lower_dimensional_cones_have_zero_measure() {
        assert_relative_eq!(measure(&cone(2, &[&[0.0, 1.0]], &[])), 0.0);
        assert_relative_eq!(measure(&cone(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]], &[])), 0.0);
        let line = cone(2, &[], &[&[1.0, 0.0]]);
        assert_relative_eq!(measure(&line), 0.0);
    }

    #[test]
    fn mc_measure_matches_exact_octant() {
        let oct = cone(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]], &[]);
        let (val, err) = measure_mc(&oct, 100_000, 7);
        assert!((val - PI / 2.0).abs() <= 4.0 * err, "val {val} err {err}");
    }

    #[test]
    fn mc_centroid_matches_exact_octant() {
        let oct = cone(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]], &[]);
        let exact = centroid(&oct).unwrap();
        let (mc, ang) = centroid_mc(&oct, 100_000, 11).unwrap();
        let angle = angle_between(exact.as_ref(), mc.as_ref());
        assert!(angle <= 4.0 * ang + 1e-3, "angle {angle} est {ang}");
    }

    #[test]
    fn min_dot_quarter_cone() {
        // Polar of the wedge: cone{e1, -e2}; q = -cd = (1,-1)/sqrt2.
        let c = cone(2, &[&[1.0, 0.0], &[0.0, -1.0]], &[]);
        let s = 1.0 / 2f64.sqrt();
        let q = v(&[s, -s]);
        let m = min_dot(&c, &q);
        assert_relative_eq!(m, s, epsilon = 1e-9);
        // Radius pi/4 around -cd.
        assert_relative_eq!(m.clamp(-1.0, 1.0).acos(), PI / 4.0, epsilon = 1e-9);
    }

    #[test]
    fn min_dot_full_and_half() {
        let full = PolyhedralCone::full_space(3);
        assert_relative_eq!(min_dot(&full, &v(&[0.0, 0.0, 1.0])), -1.0, epsilon = 1e-12);
        // Lower half-plane region vs the direction -e2: the far points are +-e1.
        let lower = cone(2, &[&[0.0, -1.0]], &[&[1.0, 0.0]]);
        assert_relative_eq!(min_dot(&lower, &v(&[0.0, -1.0])), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn min_dot_matches_sampling() {
        let c = cone(3, &[&[1.0, 0.2, 0.3], &[0.1, 1.0, 0.4], &[0.3, 0.2, 1.0]], &[]);
        let q = v(&[-0.3, 0.8, 0.5]);
        let exact = min_dot(&c, &q);
        let dirs = sample_sphere(3, 200_000, 3);
        let tol = tol_geom();
        let mut best = f64::INFINITY;
        for d in &dirs {
            if lp::cone_contains(c.rays(), c.lines(), d, tol) {
                best = best.min(d.dot(&q));
            }
        }
        // Sampling can only overshoot the true minimum, by about the
        // nearest-sample angular resolution.
        assert!(exact <= best + 1e-9, "exact {exact} sampled {best}");
        assert!((exact - best).abs() <= 0.03, "exact {exact} sampled {best}");
    }
}
