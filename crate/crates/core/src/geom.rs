//! Dense vector primitives, hyperplanes, the stretch map, stereographic
//! pullback and the self-adjoint product eigenvalue check.
//!
//! Dimensions are runtime values (everything downstream works in R^n for
//! small n), so vectors are heap-backed rather than const-generic.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::tol::{tol_geom, TOL_ZERO};

/// A point or direction of R^n.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Vector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector { coords: vec![0.0; dim] }
    }

    /// The `i`-th standard basis vector of R^dim.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        Vector { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        self.sub(other).norm()
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    /// self + s * other, in one pass.
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + s * b).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    /// Component of `self` orthogonal to the given orthonormal set.
    pub fn project_off(&self, basis: &[Vector]) -> Vector {
        let mut v = self.clone();
        for b in basis {
            let c = v.dot(b);
            v = v.axpy(-c, b);
        }
        v
    }

    /// Orthogonal projection of `self` onto the span of an orthonormal set.
    pub fn project_onto(&self, basis: &[Vector]) -> Vector {
        let mut v = Vector::zeros(self.dim());
        for b in basis {
            v = v.axpy(self.dot(b), b);
        }
        v
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl From<Vec<f64>> for Vector {
    fn from(coords: Vec<f64>) -> Self {
        Vector::new(coords)
    }
}

impl From<&[f64]> for Vector {
    fn from(coords: &[f64]) -> Self {
        Vector::new(coords.to_vec())
    }
}

/// A vector of unit Euclidean norm.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector(Vector);

impl UnitVector {
    /// Wraps a vector that is already unit up to `TOL_ZERO` slack.
    pub fn new_unchecked(v: Vector) -> Self {
        debug_assert!((v.norm() - 1.0).abs() <= 1e-9, "norm {} not 1", v.norm());
        UnitVector(v)
    }

    pub fn into_vector(self) -> Vector {
        self.0
    }
}

impl std::ops::Deref for UnitVector {
    type Target = Vector;
    fn deref(&self) -> &Vector {
        &self.0
    }
}

impl AsRef<Vector> for UnitVector {
    fn as_ref(&self) -> &Vector {
        &self.0
    }
}

/// v / |v|, failing on (near-)zero input.
pub fn normalize(v: &Vector) -> Result<UnitVector> {
    let n = v.norm();
    if !n.is_finite() {
        return Err(Error::NonFinite);
    }
    if n <= TOL_ZERO {
        return Err(Error::ZeroVector);
    }
    Ok(UnitVector(v.scale(1.0 / n)))
}

/// Stretch along `u` by factor `lambda`: x + (lambda - 1) <x,u> u.
pub fn stretch(x: &Vector, lambda: f64, u: &UnitVector) -> Vector {
    x.axpy((lambda - 1.0) * x.dot(u), u)
}

/// Reflection of `x` across the hyperplane through the origin orthogonal to `u`.
pub fn reflect(x: &Vector, u: &UnitVector) -> Vector {
    x.axpy(-2.0 * x.dot(u), u)
}

/// Inverse stereographic projection from the pole (0,...,0,1).
///
/// Maps x in R^n to the point of S^n that projects to x; the image is
/// (2x, |x|^2 - 1) / (|x|^2 + 1), which tends to the pole as |x| grows.
pub fn stereo_inverse(x: &Vector) -> UnitVector {
    let n2 = x.norm_sq();
    let d = n2 + 1.0;
    let mut coords = Vec::with_capacity(x.dim() + 1);
    if d.is_finite() {
        for c in x.coords() {
            coords.push(2.0 * c / d);
        }
        coords.push((n2 - 1.0) / d);
    } else {
        // Overflow-far input: clamp to the pole's antipodal limit.
        coords = vec![0.0; x.dim()];
        coords.push(1.0);
    }
    let v = Vector::new(coords);
    let n = v.norm();
    UnitVector(v.scale(1.0 / n))
}

/// An affine hyperplane {x : <x, normal> = offset}.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    pub normal: UnitVector,
    pub offset: f64,
}

impl Hyperplane {
    pub fn new(normal: UnitVector, offset: f64) -> Self {
        Hyperplane { normal, offset }
    }

    pub fn signed_distance(&self, x: &Vector) -> f64 {
        x.dot(&self.normal) - self.offset
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.signed_distance(x).abs() <= tol
    }
}

/// Smallest real part among the eigenvalues of A*B.
///
/// A and B are expected symmetric; the product is not, so the spectrum is
/// taken from a general (Schur-based) eigensolver. When A is positive
/// definite the spectrum is real and imaginary parts are roundoff noise.
pub fn product_min_eigenvalue(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<f64> {
    if a.iter().any(|x| !x.is_finite()) || b.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    assert_eq!(a.nrows(), a.ncols());
    assert_eq!(b.nrows(), b.ncols());
    assert_eq!(a.ncols(), b.nrows());
    let prod = a * b;
    let eig = prod.complex_eigenvalues();
    Ok(eig.iter().map(|z| z.re).fold(f64::INFINITY, f64::min))
}

/// Modified Gram-Schmidt with re-orthogonalization; drops dependents at `tol`.
pub fn orthonormalize(vs: &[Vector], tol: f64) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vs {
        let mut w = v.project_off(&basis);
        w = w.project_off(&basis); // second pass controls cancellation
        let n = w.norm();
        if n > tol.max(TOL_ZERO) * v.norm().max(1.0) {
            basis.push(w.scale(1.0 / n));
        }
    }
    basis
}

/// Rank of a vector family at the incidence tolerance.
pub fn rank_of(vs: &[Vector], tol: f64) -> usize {
    orthonormalize(vs, tol).len()
}

/// Surface measure of the unit sphere S^{n-1} in R^n.
///
/// omega(1) = 2 (counting measure on S^0), omega(2) = 2*pi, omega(3) = 4*pi.
pub fn sphere_surface_measure(n: usize) -> f64 {
    assert!(n >= 1);
    // 2 pi^{n/2} / Gamma(n/2), by the recursion Gamma(x+1) = x Gamma(x).
    let half = n as f64 / 2.0;
    let mut gamma = if n % 2 == 0 { 1.0 } else { std::f64::consts::PI.sqrt() };
    let mut x = if n % 2 == 0 { 1.0 } else { 0.5 };
    while x < half - 0.25 {
        gamma *= x;
        x += 1.0;
    }
    2.0 * std::f64::consts::PI.powf(half) / gamma
}

/// An orthonormal basis of `dim`-dimensional space completed from `seed`.
///
/// The first basis vector is `seed` itself; the rest span its complement.
pub fn complete_basis(seed: &UnitVector) -> Vec<Vector> {
    let dim = seed.dim();
    let mut all = vec![seed.as_ref().clone()];
    for i in 0..dim {
        all.push(Vector::basis(dim, i));
    }
    let basis = orthonormalize(&all, tol_geom());
    debug_assert_eq!(basis.len(), dim);
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    #[test]
    fn normalize_examples() {
        let u = normalize(&v(&[3.0, 4.0])).unwrap();
        assert_relative_eq!(u[0], 0.6, epsilon = 1e-15);
        assert_relative_eq!(u[1], 0.8, epsilon = 1e-15);
        assert!(matches!(normalize(&v(&[0.0, 0.0])), Err(Error::ZeroVector)));
        assert!(matches!(normalize(&v(&[1e-15, 0.0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn stretch_examples() {
        let u = normalize(&v(&[0.0, 1.0])).unwrap();
        let out = stretch(&v(&[1.0, 1.0]), 2.0, &u);
        assert_eq!(out.coords(), &[1.0, 2.0]);
        let id = stretch(&v(&[0.3, -0.7]), 1.0, &u);
        assert_eq!(id.coords(), &[0.3, -0.7]);
        let proj = stretch(&v(&[1.0, 1.0]), 0.0, &u);
        assert_eq!(proj.coords(), &[1.0, 0.0]);
    }

    #[test]
    fn stretch_inverts() {
        // stretch(stretch(x, l, u), 1/l, u) = x for l in [0.1, 10].
        let u = normalize(&v(&[1.0, 2.0, -1.0])).unwrap();
        let x = v(&[0.4, -1.3, 2.2]);
        for k in 0..20 {
            let lambda = 0.1 + (10.0 - 0.1) * (k as f64) / 19.0;
            let back = stretch(&stretch(&x, lambda, &u), 1.0 / lambda, &u);
            assert!(back.dist(&x) <= 1e-10, "lambda {lambda}");
        }
    }

    #[test]
    fn stereo_inverse_examples() {
        let p = stereo_inverse(&v(&[0.0, 0.0]));
        assert_relative_eq!(p[2], -1.0, epsilon = 1e-15);
        // x = (1) in R^1 lands on (1, 0) in S^1.
        let q = stereo_inverse(&v(&[1.0]));
        assert_relative_eq!(q[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(q[1], 0.0, epsilon = 1e-15);
        // Far inputs approach the pole.
        let far = stereo_inverse(&v(&[1e9, 0.0]));
        assert!(far[2] > 1.0 - 1e-8);
        // Forward projection recovers the input: pi(y) = y_head / (1 - y_last).
        let x = v(&[0.7, -2.3]);
        let y = stereo_inverse(&x);
        let back = v(&[y[0] / (1.0 - y[2]), y[1] / (1.0 - y[2])]);
        assert!(back.dist(&x) <= 1e-12);
    }

    #[test]
    fn stereo_inverse_injective_on_samples() {
        let mut pts = Vec::new();
        for i in -5i32..=5 {
            for j in -5i32..=5 {
                pts.push(stereo_inverse(&v(&[i as f64 * 3.0, j as f64 * 3.0])));
            }
        }
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                assert!(pts[i].dist(&pts[j]) > 0.0);
            }
        }
    }

    #[test]
    fn reflect_is_involution() {
        let u = normalize(&v(&[1.0, -1.0, 0.5])).unwrap();
        let x = v(&[0.2, 0.9, -1.7]);
        let twice = reflect(&reflect(&x, &u), &u);
        assert!(twice.dist(&x) <= 1e-12);
    }

    #[test]
    fn product_eigenvalue_examples() {
        let eye = DMatrix::<f64>::identity(3, 3);
        let zero = DMatrix::<f64>::zeros(3, 3);
        assert_relative_eq!(product_min_eigenvalue(&eye, &eye).unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(product_min_eigenvalue(&eye, &zero).unwrap(), 0.0, epsilon = 1e-12);
        let bad = DMatrix::from_element(2, 2, f64::NAN);
        assert!(matches!(product_min_eigenvalue(&bad, &eye.clone().remove_row(0).remove_column(0)), Err(Error::NonFinite)));
    }

    #[test]
    fn sphere_measures() {
        assert_relative_eq!(sphere_surface_measure(2), 2.0 * std::f64::consts::PI, epsilon = 1e-12);
        assert_relative_eq!(sphere_surface_measure(3), 4.0 * std::f64::consts::PI, epsilon = 1e-12);
        assert_relative_eq!(sphere_surface_measure(1), 2.0, epsilon = 1e-12);
        // omega(4) = 2 pi^2
        assert_relative_eq!(sphere_surface_measure(4), 2.0 * std::f64::consts::PI.powi(2), epsilon = 1e-10);
    }

    #[test]
    fn orthonormalize_drops_dependents() {
        let basis = orthonormalize(
            &[v(&[1.0, 0.0, 0.0]), v(&[1.0, 1e-14, 0.0]), v(&[0.0, 1.0, 0.0])],
            1e-9,
        );
        assert_eq!(basis.len(), 2);
        assert!(basis[0].dot(&basis[1]).abs() <= 1e-12);
    }
}
