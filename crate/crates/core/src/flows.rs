//! The deformation retractions: apex translation, the hyperboloid
//! flattening flow, the paraboloid flow with the stretch map, and the
//! cylinder flow, together with time-sampled traces.
//!
//! Smooth model bodies (hyperboloid, paraboloid, ball) enter as polyhedral
//! discretizations with explicit resolution, which keeps every Minkowski
//! sum inside the closed polyhedral class.

use crate::bodies::{self, BodyClass, VBody};
use crate::cones::LinearSubspace;
use crate::error::{Error, Result};
use crate::exec;
use crate::geom::{complete_basis, normalize, orthonormalize, rank_of, UnitVector, Vector};
use crate::metrics::{self, MetricsConfig};
use crate::tol::{tol_geom, TOL_ZERO};

/// Discretization parameters for the model bodies.
#[derive(Clone, Copy, Debug)]
pub struct ModelBodyConfig {
    /// Boundary sample count per angular ring (even, at least 8).
    pub resolution: usize,
    /// How far out the boundary is sampled.
    pub radial_extent: f64,
}

impl ModelBodyConfig {
    pub fn new(resolution: usize, radial_extent: f64) -> Result<Self> {
        if resolution < 8 || resolution % 2 != 0 {
            return Err(Error::Degenerate("resolution must be even and >= 8".into()));
        }
        if !(radial_extent > 0.0) {
            return Err(Error::Degenerate("radial extent must be positive".into()));
        }
        Ok(ModelBodyConfig { resolution, radial_extent })
    }
}

impl Default for ModelBodyConfig {
    fn default() -> Self {
        ModelBodyConfig { resolution: 64, radial_extent: 64.0 }
    }
}

/// Which deformation to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowKind {
    Theorem1,
    Theorem2,
    Theorem3,
}

/// Time-sampled flow diagnostics; all columns share the time grid.
#[derive(Clone, Debug)]
pub struct FlowTrace {
    pub times: Vec<f64>,
    pub tau: Vec<f64>,
    pub nc_radius: Vec<f64>,
    pub step_da: Vec<f64>,
    pub bodies: Option<Vec<VBody>>,
}

/// The apex of an irreducible body: solid centroid of the compact part of
/// the face opposite the central direction, plus that face's linearity.
#[derive(Clone, Debug)]
pub struct Apex {
    /// Base point of the apex affine set (the centroid).
    pub base: Vector,
    /// Direction space of the apex affine set.
    pub directions: LinearSubspace,
    /// Closest point of the apex set to the origin.
    pub p: Vector,
}

pub fn apex(body: &VBody) -> Result<Apex> {
    let u = bodies::central_direction(body)?;
    let neg = UnitVector::new_unchecked(u.as_ref().scale(-1.0));
    let contact = bodies::face(body, &neg)?;
    let (ol, l) = bodies::motzkin_decompose(&contact.body)?;
    debug_assert!(ol.rays().is_empty(), "balanced contact face is compact modulo lines");
    let base = solid_centroid(ol.points());
    // Points of the canonical face are already orthogonal to its lines, so
    // the centroid is itself the closest point of base + L to the origin.
    let p = l.project_off(&base);
    Ok(Apex { base, directions: l, p })
}

/// Translation flow K - t p(K); at t = 1 the apex passes through the origin.
pub fn apex_translation_flow(body: &VBody, t: f64) -> Result<VBody> {
    let a = apex(body)?;
    Ok(body.translate(&a.p.scale(-t)))
}

/// Discretized hyperboloidal body with axis `u`.
///
/// t = 0 is the half-line along u, t = 1 the half-space with inward normal
/// u; in between the boundary graph of (sqrt(1 + rho^2) - 1)(1-t)/t is
/// sampled on rings, and the recession cone is the circular cone of
/// half-angle arctan(t/(1-t)) modeled by a ring of rays.
pub fn hyperboloid_body(t: f64, u: &UnitVector, cfg: &ModelBodyConfig) -> Result<VBody> {
    let dim = u.dim();
    let o = Vector::zeros(dim);
    if t <= TOL_ZERO {
        return VBody::new(dim, vec![o], vec![u.as_ref().clone()], vec![]);
    }
    if t >= 1.0 - TOL_ZERO {
        let basis = complete_basis(u);
        return VBody::new(dim, vec![o], vec![u.as_ref().clone()], basis[1..].to_vec());
    }
    let basis = complete_basis(u);
    let ring = ring_directions(&basis[1..], cfg.resolution);
    let slope = (1.0 - t) / t;
    let mut points = vec![o];
    for rho in ring_radii(cfg) {
        let h = ((1.0 + rho * rho).sqrt() - 1.0) * slope;
        for d in &ring {
            points.push(d.scale(rho).axpy(h, u));
        }
    }
    let alpha = (t / (1.0 - t)).atan();
    let (sin_a, cos_a) = alpha.sin_cos();
    let rays: Vec<Vector> = ring.iter().map(|d| d.scale(sin_a).axpy(cos_a, u)).collect();
    VBody::new(dim, points, rays, vec![])
}

/// Discretized solid paraboloid with central direction `u`:
/// the graph of rho^2 over u-perp, with the single recession ray u.
pub fn paraboloid_body(u: &UnitVector, cfg: &ModelBodyConfig) -> Result<VBody> {
    let dim = u.dim();
    let basis = complete_basis(u);
    let ring = ring_directions(&basis[1..], cfg.resolution);
    let mut points = vec![Vector::zeros(dim)];
    for rho in ring_radii(cfg) {
        for d in &ring {
            points.push(d.scale(rho).axpy(rho * rho, u));
        }
    }
    VBody::new(dim, points, vec![u.as_ref().clone()], vec![])
}

/// Polytope approximation of the unit ball of the complement of `l`.
pub fn ball_body(l: &LinearSubspace, cfg: &ModelBodyConfig) -> Result<VBody> {
    let dim = l.ambient_dim();
    let mut candidates: Vec<Vector> = l.basis().to_vec();
    for i in 0..dim {
        candidates.push(Vector::basis(dim, i));
    }
    let full = orthonormalize(&candidates, tol_geom());
    let perp: Vec<Vector> = full[l.rank()..].to_vec();
    let q = perp.len();
    let points: Vec<Vector> = match q {
        0 => vec![Vector::zeros(dim)],
        1 => vec![perp[0].clone(), perp[0].scale(-1.0)],
        2 => (0..cfg.resolution)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / cfg.resolution as f64;
                perp[0].scale(a.cos()).axpy(a.sin(), &perp[1])
            })
            .collect(),
        _ => {
            // Fibonacci lattice on the 2-sphere of the complement (q = 3),
            // seeded samples beyond.
            let count = cfg.resolution * 4;
            let dirs = if q == 3 {
                fibonacci_sphere(count)
            } else {
                crate::cones::sphere::sample_sphere(q, count, 5)
            };
            dirs.iter()
                .map(|d| {
                    let mut p = Vector::zeros(dim);
                    for (k, b) in perp.iter().enumerate() {
                        p = p.axpy(d[k], b);
                    }
                    p
                })
                .collect()
        }
    };
    VBody::new(dim, points, vec![], vec![])
}

/// The half-space { x : <x, u> >= 0 } as a body.
pub fn halfspace_body(u: &UnitVector) -> Result<VBody> {
    VBody::half_space(&Vector::zeros(u.dim()), u)
}

/// Flattening flow K_t = K + H^t along the central direction.
pub fn theorem1_flow(body: &VBody, t: f64, cfg: &ModelBodyConfig) -> Result<VBody> {
    let u = bodies::central_direction(body)?;
    let h = hyperboloid_body(t, &u, cfg)?;
    bodies::minkowski_sum(body, &h)
}

/// Paraboloid flow K_t = (1-t) S_{1/(1-t), u}(K) + t P_u.
///
/// The scaled stretch simplifies to x -> (1-t) x + t <x,u> u, which remains
/// valid at t = 1 where it degenerates to the projection onto the u-line.
pub fn theorem2_flow(body: &VBody, t: f64, cfg: &ModelBodyConfig) -> Result<VBody> {
    if !bodies::is_k_plus(body) {
        return Err(Error::NotInKPlus);
    }
    let a = apex(body)?;
    let scale = 1.0 + body.points().iter().map(|p| p.norm()).fold(0.0, f64::max);
    if a.p.norm() > 1e-6 * scale {
        return Err(Error::ApexNotAtOrigin(a.p.norm()));
    }
    if t <= TOL_ZERO {
        return Ok(body.clone());
    }
    let u = bodies::central_direction(body)?;
    let mapped = body.apply_linear(|x| x.scale(1.0 - t).axpy(t * x.dot(&u), &u))?;
    let p = paraboloid_body(&u, cfg)?.scale(t);
    bodies::minkowski_sum(&mapped, &p)
}

/// Cylinder flow: the compact cross-section deforms to the unit ball while
/// the linearity space is carried along.
pub fn theorem3_flow(body: &VBody, t: f64, cfg: &ModelBodyConfig) -> Result<VBody> {
    let m = match bodies::classify(body) {
        BodyClass::Cylinder(m) => m,
        _ => return Err(Error::NotCylinder),
    };
    debug_assert!(m >= 1);
    let (cross, l) = bodies::motzkin_decompose(body)?;
    let ball = ball_body(&l, cfg)?;
    let blended = bodies::minkowski_sum(&cross.scale(1.0 - t), &ball.scale(t))?;
    VBody::new(
        body.dim(),
        blended.points().to_vec(),
        blended.rays().to_vec(),
        l.basis().to_vec(),
    )
}

/// Runs a flow on a uniform time grid and collects the trace columns.
///
/// Steps are independent given the initial body, so bodies and their
/// diagnostics are evaluated in parallel; ordering is by time.
pub fn run_trace(
    body: &VBody,
    kind: FlowKind,
    steps: usize,
    cfg: &ModelBodyConfig,
    mcfg: &MetricsConfig,
    retain_bodies: bool,
) -> Result<FlowTrace> {
    assert!(steps >= 1);
    let times: Vec<f64> = (0..=steps).map(|i| i as f64 / steps as f64).collect();

    let u_ref = reference_direction(body, kind)?;

    let results: Vec<Result<VBody>> = exec::map_slice(&times, |&t| match kind {
        FlowKind::Theorem1 => theorem1_flow(body, t, cfg),
        FlowKind::Theorem2 => theorem2_flow(body, t, cfg),
        FlowKind::Theorem3 => theorem3_flow(body, t, cfg),
    });
    let mut frames = Vec::with_capacity(results.len());
    for r in results {
        frames.push(r?);
    }

    let tau = exec::map_slice(&frames, bodies::total_curvature);
    let radius_results: Vec<Result<f64>> =
        exec::map_slice(&frames, |k| metrics::nc_hausdorff_radius(k, &u_ref));
    let mut nc_radius = Vec::with_capacity(radius_results.len());
    for r in radius_results {
        nc_radius.push(r?);
    }

    let step_da: Vec<f64> = {
        let mut da = vec![0.0];
        let pairs: Vec<f64> = exec::map_indexed(frames.len() - 1, |i| {
            metrics::asymptotic_distance(&frames[i], &frames[i + 1], mcfg)
        });
        da.extend(pairs);
        da
    };

    Ok(FlowTrace {
        times,
        tau,
        nc_radius,
        step_da,
        bodies: if retain_bodies { Some(frames) } else { None },
    })
}

fn reference_direction(body: &VBody, kind: FlowKind) -> Result<UnitVector> {
    match kind {
        FlowKind::Theorem1 | FlowKind::Theorem2 => bodies::central_direction(body),
        // Cylinders have no central direction; any direction of the
        // cross-section space supports every frame, and the normal-cone
        // radius column is the constant pi.
        FlowKind::Theorem3 => {
            let l = LinearSubspace::new(body.dim(), body.lines());
            let mut candidates = Vec::new();
            for i in 0..body.dim() {
                candidates.push(Vector::basis(body.dim(), i));
            }
            for c in candidates {
                let r = l.project_off(&c);
                if r.norm() > 1e-6 {
                    return normalize(&r);
                }
            }
            Err(Error::Degenerate("cylinder spans the whole space".into()))
        }
    }
}

/// Solid centroid of the convex hull of a point set, inside its affine hull.
pub(crate) fn solid_centroid(points: &[Vector]) -> Vector {
    let (_, c) = hull_measure_centroid(points);
    c
}

/// (q-volume, centroid) of conv(points) inside its affine hull of dim q.
///
/// q = 2 closes the recursion with the exact polygon formula; higher
/// dimensions decompose into pyramids over facets (enumerated through the
/// homogenization cone).
fn hull_measure_centroid(points: &[Vector]) -> (f64, Vector) {
    let tol = tol_geom();
    let diffs: Vec<Vector> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
    let q = rank_of(&diffs, tol);
    match q {
        0 => (1.0, points[0].clone()),
        1 => {
            let axis = orthonormalize(&diffs, tol).remove(0);
            let coords: Vec<f64> = points.iter().map(|p| p.sub(&points[0]).dot(&axis)).collect();
            let lo = coords.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = coords.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            (hi - lo, points[0].axpy((lo + hi) / 2.0, &axis))
        }
        2 => {
            let basis = orthonormalize(&diffs, tol);
            let mut planar: Vec<(f64, f64, usize)> = points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let d = p.sub(&points[0]);
                    (d.dot(&basis[0]), d.dot(&basis[1]), i)
                })
                .collect();
            // Order the hull counterclockwise around the mean.
            let mx = planar.iter().map(|p| p.0).sum::<f64>() / planar.len() as f64;
            let my = planar.iter().map(|p| p.1).sum::<f64>() / planar.len() as f64;
            planar.sort_by(|a, b| {
                (a.1 - my).atan2(a.0 - mx).total_cmp(&(b.1 - my).atan2(b.0 - mx))
            });
            let k = planar.len();
            let mut area2 = 0.0;
            let mut cx = 0.0;
            let mut cy = 0.0;
            for i in 0..k {
                let (x0, y0, _) = planar[i];
                let (x1, y1, _) = planar[(i + 1) % k];
                let w = x0 * y1 - x1 * y0;
                area2 += w;
                cx += (x0 + x1) * w;
                cy += (y0 + y1) * w;
            }
            if area2.abs() <= tol {
                // Degenerate ordering; fall back to the vertex mean.
                let mean = vertex_mean(points);
                return (0.0, mean);
            }
            let area = area2 / 2.0;
            let gx = cx / (3.0 * area2);
            let gy = cy / (3.0 * area2);
            (
                area.abs(),
                points[0].axpy(gx, &basis[0]).axpy(gy, &basis[1]),
            )
        }
        _ => {
            let hub = vertex_mean(points);
            let body = match VBody::from_points(points[0].dim(), points.to_vec()) {
                Ok(b) => b,
                Err(_) => return (0.0, hub),
            };
            let facets = match bodies::facet_hyperplanes(&body) {
                Ok(f) => f,
                Err(_) => return (0.0, hub),
            };
            let tol_inc = tol * 1e2;
            let scale = 1.0 + points.iter().map(|p| p.norm()).fold(0.0, f64::max);
            let mut vol = 0.0;
            let mut weighted = Vector::zeros(points[0].dim());
            for h in &facets {
                let on: Vec<Vector> = points
                    .iter()
                    .filter(|p| h.signed_distance(p).abs() <= tol_inc * scale)
                    .cloned()
                    .collect();
                if on.len() < q {
                    continue;
                }
                let (base_vol, base_c) = hull_measure_centroid(&on);
                let height = -h.signed_distance(&hub);
                let pyr_vol = base_vol * height / q as f64;
                let pyr_c = hub.add(&base_c.sub(&hub).scale(q as f64 / (q as f64 + 1.0)));
                vol += pyr_vol;
                weighted = weighted.axpy(pyr_vol, &pyr_c);
            }
            if vol <= TOL_ZERO {
                (0.0, hub)
            } else {
                (vol, weighted.scale(1.0 / vol))
            }
        }
    }
}

fn vertex_mean(points: &[Vector]) -> Vector {
    let mut m = Vector::zeros(points[0].dim());
    for p in points {
        m = m.add(p);
    }
    m.scale(1.0 / points.len() as f64)
}

fn ring_radii(cfg: &ModelBodyConfig) -> Vec<f64> {
    // Geometric rings from radial_extent down over eight octaves, plus the
    // unit ring so low-t formula checks sample rho = 1 exactly.
    let mut radii: Vec<f64> = (0..9).map(|j| cfg.radial_extent * 0.5f64.powi(j)).collect();
    if cfg.radial_extent >= 1.0 {
        radii.push(1.0);
    }
    radii.sort_by(f64::total_cmp);
    radii.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    radii
}

/// `count` directions on the unit sphere of the span of `basis`.
fn ring_directions(basis: &[Vector], count: usize) -> Vec<Vector> {
    match basis.len() {
        0 => Vec::new(),
        1 => vec![basis[0].clone(), basis[0].scale(-1.0)],
        2 => (0..count)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
                basis[0].scale(a.cos()).axpy(a.sin(), &basis[1])
            })
            .collect(),
        q => {
            let dirs = if q == 3 {
                fibonacci_sphere(count * 2)
            } else {
                crate::cones::sphere::sample_sphere(q, count * 2, 2)
            };
            dirs.iter()
                .map(|d| {
                    let mut p = Vector::zeros(basis[0].dim());
                    for (k, b) in basis.iter().enumerate() {
                        p = p.axpy(d[k], b);
                    }
                    p
                })
                .collect()
        }
    }
}

fn fibonacci_sphere(count: usize) -> Vec<Vector> {
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
