//! Seeded random instance generators shared by property tests, the
//! acceptance suite and the benches. Not part of the public contract.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bodies::{self, BodyClass, VBody};
use crate::cones::PolyhedralCone;
use crate::geom::{normalize, orthonormalize, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    Vector::new((0..dim).map(|_| standard_normal(rng)).collect())
}

pub fn unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let v = gaussian_vector(rng, dim);
        if v.norm() > 1e-6 {
            return v.scale(1.0 / v.norm());
        }
    }
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen();
        if u1 > f64::MIN_POSITIVE {
            return (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        }
    }
}

/// A random cone with up to `max_rays` rays and optionally a line.
pub fn random_cone<R: Rng>(rng: &mut R, dim: usize, max_rays: usize) -> PolyhedralCone {
    let nrays = rng.gen_range(0..=max_rays);
    let rays: Vec<Vector> = (0..nrays).map(|_| unit_vector(rng, dim)).collect();
    let lines = if rng.gen_bool(0.25) && dim >= 2 {
        vec![unit_vector(rng, dim)]
    } else {
        Vec::new()
    };
    PolyhedralCone::from_generators(dim, rays, lines).expect("random cone")
}

/// A random relatively proper cone (at least one pointed ray survives).
pub fn random_proper_cone<R: Rng>(rng: &mut R, dim: usize, max_rays: usize) -> PolyhedralCone {
    loop {
        let c = random_cone(rng, dim, max_rays.max(1));
        if c.is_relatively_proper() {
            return c;
        }
    }
}

/// Rays drawn inside the spherical cap of the given half-angle around `axis`.
pub fn rays_in_cap<R: Rng>(
    rng: &mut R,
    axis: &Vector,
    half_angle: f64,
    count: usize,
) -> Vec<Vector> {
    let dim = axis.dim();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = unit_vector(rng, dim);
        let mixed = axis.scale(1.0).add(&v.scale(half_angle.tan()));
        let r = mixed.scale(1.0 / mixed.norm());
        if r.dot(axis) > half_angle.cos() {
            out.push(r);
        }
    }
    out
}

/// A random compact polytope.
pub fn random_bounded_body<R: Rng>(rng: &mut R, dim: usize) -> VBody {
    let npts = rng.gen_range(dim + 1..=dim + 5);
    let points: Vec<Vector> = (0..npts)
        .map(|_| gaussian_vector(rng, dim).add(&gaussian_vector(rng, dim).scale(0.3)))
        .collect();
    VBody::from_points(dim, points).expect("random polytope")
}

/// A random irreducible body: compact part plus a pointed bundle of rays
/// (occasionally widened with a line in dimension >= 3).
pub fn random_irreducible_body<R: Rng>(rng: &mut R, dim: usize) -> VBody {
    loop {
        let axis = unit_vector(rng, dim);
        let half_angle = rng.gen_range(0.2..1.2);
        let nrays = rng.gen_range(1..=dim + 1);
        let rays = rays_in_cap(rng, &axis, half_angle, nrays);
        let npts = rng.gen_range(1..=4);
        let points: Vec<Vector> = (0..npts).map(|_| gaussian_vector(rng, dim)).collect();
        let body = VBody::new(dim, points, rays, Vec::new()).expect("random body");
        if bodies::classify(&body) == BodyClass::Irreducible {
            return body;
        }
    }
}

/// A random body in K^n_+ translated so its apex sits at the origin.
pub fn random_k_plus_based<R: Rng>(rng: &mut R, dim: usize) -> VBody {
    loop {
        let body = random_irreducible_body(rng, dim);
        if !bodies::is_k_plus(&body) {
            continue;
        }
        let a = crate::flows::apex(&body).expect("apex of irreducible body");
        let based = body.translate(&a.p.scale(-1.0));
        let check = crate::flows::apex(&based).expect("apex after translation");
        if check.p.norm() <= 1e-9 {
            return based;
        }
    }
}

/// A random cylinder: compact cross-section plus an m-dimensional linearity.
pub fn random_cylinder<R: Rng>(rng: &mut R, dim: usize) -> VBody {
    let m = rng.gen_range(1..dim);
    let lines: Vec<Vector> = (0..m).map(|_| unit_vector(rng, dim)).collect();
    loop {
        let base = random_bounded_body(rng, dim);
        let body = VBody::new(dim, base.points().to_vec(), Vec::new(), lines.clone())
            .expect("random cylinder");
        if bodies::classify(&body) == BodyClass::Cylinder(m) {
            return body;
        }
    }
}

/// A random orthogonal matrix, as its column vectors.
pub fn random_rotation<R: Rng>(rng: &mut R, dim: usize) -> Vec<Vector> {
    loop {
        let cols: Vec<Vector> = (0..dim).map(|_| gaussian_vector(rng, dim)).collect();
        let q = orthonormalize(&cols, 1e-9);
        if q.len() == dim {
            return q;
        }
    }
}

/// Applies a rotation (given as columns) to a vector.
pub fn rotate(columns: &[Vector], v: &Vector) -> Vector {
    let mut out = Vector::zeros(v.dim());
    for (i, c) in columns.iter().enumerate() {
        out = out.axpy(v[i], c);
    }
    out
}

/// Applies a rotation and translation to a body.
pub fn transform_body(body: &VBody, columns: &[Vector], shift: &Vector) -> VBody {
    let points = body.points().iter().map(|p| rotate(columns, p).add(shift)).collect();
    let rays = body.rays().iter().map(|r| rotate(columns, r)).collect();
    let lines = body.lines().iter().map(|l| rotate(columns, l)).collect();
    VBody::new(body.dim(), points, rays, lines).expect("rigid image of a body")
}

/// The wedge family {x <= t, y >= 0} from the central-direction example.
pub fn wedge_family(t: f64) -> VBody {
    VBody::new(
        2,
        vec![Vector::new(vec![t, 0.0])],
        vec![Vector::new(vec![-1.0, 0.0]), Vector::new(vec![0.0, 1.0])],
        vec![],
    )
    .expect("wedge body")
}

/// The upper half-plane H^2.
pub fn upper_half_plane() -> VBody {
    VBody::new(
        2,
        vec![Vector::zeros(2)],
        vec![Vector::new(vec![0.0, 1.0])],
        vec![Vector::new(vec![1.0, 0.0])],
    )
    .expect("half-plane body")
}

/// Discretized parabola-like body {y >= t x^2} out to |x| <= extent.
pub fn parabola_body(t: f64, extent: f64, samples: usize) -> VBody {
    let mut points = Vec::with_capacity(2 * samples + 1);
    for i in 0..=(2 * samples) {
        let x = -extent + extent * i as f64 / samples as f64;
        points.push(Vector::new(vec![x, t * x * x]));
    }
    VBody::new(2, points, vec![Vector::new(vec![0.0, 1.0])], vec![]).expect("parabola body")
}

/// Normalized direction helper for tests.
pub fn unit(coords: &[f64]) -> crate::geom::UnitVector {
    normalize(&Vector::from(coords)).expect("unit")
}
