//! Incremental double description: from halfspace normals to generators.
//!
//! Halfspaces are processed one at a time. While the cone still contains
//! lines, a constraint with a component along a line eliminates that line
//! (turning it into a ray); once the constraint is orthogonal to every
//! remaining line, rays are split by sign and adjacent negative/positive
//! pairs are combined on the new boundary. Adjacency is decided by the
//! algebraic rank test on the common active set.

use crate::error::{Error, Result};
use crate::geom::{orthonormalize, rank_of, Vector};
use crate::tol::{tol_geom, TOL_ZERO};

/// Default ambient-dimension cap for exact conversions.
pub const DEFAULT_DIM_CAP: usize = 6;

/// Hard limit on the number of halfspaces per conversion (active sets are
/// kept as u128 bitmasks).
const MAX_HALFSPACES: usize = 128;

/// Raw generator output of a conversion, before canonicalization.
pub(crate) struct RawCone {
    pub rays: Vec<Vector>,
    pub lines: Vec<Vector>,
}

#[derive(Clone)]
struct Ray {
    dir: Vector,
    zero: u128,
}

/// Generators of { x : <h, x> <= 0 for every h in `normals` }.
pub(crate) fn convert(dim: usize, normals: &[Vector], cap: usize) -> Result<RawCone> {
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    let tol = tol_geom();
    let hs: Vec<Vector> = normals
        .iter()
        .filter(|h| h.norm() > TOL_ZERO)
        .map(|h| h.scale(1.0 / h.norm()))
        .collect();
    if !normals.is_empty() && hs.is_empty() {
        return Err(Error::Degenerate("all halfspace normals are zero".into()));
    }
    if hs.len() > MAX_HALFSPACES {
        return Err(Error::Degenerate(format!(
            "too many halfspaces ({} > {MAX_HALFSPACES})",
            hs.len()
        )));
    }

    let mut lines: Vec<Vector> = (0..dim).map(|i| Vector::basis(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, h) in hs.iter().enumerate() {
        let bit = 1u128 << k;
        let prev_mask = bit - 1;

        // A line with a component along h absorbs the constraint.
        let mut best = None;
        let mut best_val = tol;
        for (i, l) in lines.iter().enumerate() {
            let c = l.dot(h).abs();
            if c > best_val {
                best_val = c;
                best = Some(i);
            }
        }
        if let Some(i) = best {
            let l0 = lines.remove(i);
            let c0 = l0.dot(h);
            for l in lines.iter_mut() {
                *l = l.axpy(-l.dot(h) / c0, &l0);
            }
            lines = orthonormalize(&lines, tol);
            for r in rays.iter_mut() {
                let adj = r.dir.axpy(-r.dir.dot(h) / c0, &l0);
                let n = adj.norm();
                debug_assert!(n > TOL_ZERO);
                r.dir = adj.scale(1.0 / n);
                r.zero |= bit;
            }
            let r0 = if c0 > 0.0 { l0.scale(-1.0) } else { l0 };
            rays.push(Ray { dir: r0, zero: prev_mask });
            continue;
        }

        // All lines orthogonal to h: split rays by sign.
        let vals: Vec<f64> = rays.iter().map(|r| r.dir.dot(h)).collect();
        let mut neg = Vec::new();
        let mut on = Vec::new();
        let mut pos = Vec::new();
        for (i, &s) in vals.iter().enumerate() {
            if s < -tol {
                neg.push(i);
            } else if s > tol {
                pos.push(i);
            } else {
                on.push(i);
            }
        }
        if pos.is_empty() {
            for &i in &on {
                rays[i].zero |= bit;
            }
            continue;
        }

        let quotient_dim = dim - lines.len();
        let mut next: Vec<Ray> = Vec::new();
        for &i in &neg {
            next.push(rays[i].clone());
        }
        for &i in &on {
            let mut r = rays[i].clone();
            r.zero |= bit;
            next.push(r);
        }
        for &i in &neg {
            for &j in &pos {
                let common = rays[i].zero & rays[j].zero & prev_mask;
                if !adjacent(&hs, common, quotient_dim, tol) {
                    continue;
                }
                let w = rays[i].dir.scale(vals[j]).axpy(-vals[i], &rays[j].dir);
                let n = w.norm();
                if n <= TOL_ZERO {
                    continue;
                }
                next.push(Ray { dir: w.scale(1.0 / n), zero: common | bit });
            }
        }
        rays = dedup(next, tol);
    }

    Ok(RawCone { rays: rays.into_iter().map(|r| r.dir).collect(), lines })
}

/// Rank test: two extreme rays are adjacent iff their common active normals
/// span a space of dimension (pointed dimension - 2).
fn adjacent(hs: &[Vector], common: u128, quotient_dim: usize, tol: f64) -> bool {
    if quotient_dim < 2 {
        return false;
    }
    if quotient_dim == 2 {
        // In a 2-dimensional pointed cone any negative/positive pair spans it.
        return true;
    }
    let active: Vec<Vector> = hs
        .iter()
        .enumerate()
        .filter(|(m, _)| common & (1u128 << m) != 0)
        .map(|(_, h)| h.clone())
        .collect();
    rank_of(&active, tol) == quotient_dim - 2
}

fn dedup(rays: Vec<Ray>, tol: f64) -> Vec<Ray> {
    let mut out: Vec<Ray> = Vec::with_capacity(rays.len());
    for r in rays {
        if let Some(existing) = out.iter_mut().find(|o| o.dir.dist(&r.dir) <= tol.max(1e-9)) {
            // Same direction reached along two active sets: keep the union.
            existing.zero |= r.zero;
        } else {
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    #[test]
    fn empty_input_is_full_space() {
        let c = convert(3, &[], DEFAULT_DIM_CAP).unwrap();
        assert!(c.rays.is_empty());
        assert_eq!(c.lines.len(), 3);
    }

    #[test]
    fn all_zero_normals_degenerate() {
        let r = convert(2, &[v(&[0.0, 0.0])], DEFAULT_DIM_CAP);
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let r = convert(7, &[v(&[1.0; 7])], DEFAULT_DIM_CAP);
        assert!(matches!(r, Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn quadrant_from_halfspaces() {
        let c = convert(2, &[v(&[-1.0, 0.0]), v(&[0.0, -1.0])], DEFAULT_DIM_CAP).unwrap();
        assert!(c.lines.is_empty());
        assert_eq!(c.rays.len(), 2);
        let mut dirs: Vec<Vec<f64>> = c.rays.iter().map(|r| r.coords().to_vec()).collect();
        dirs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((dirs[0][0] - 0.0).abs() < 1e-12 && (dirs[0][1] - 1.0).abs() < 1e-12);
        assert!((dirs[1][0] - 1.0).abs() < 1e-12 && (dirs[1][1] - 0.0).abs() < 1e-12);
    }

    #[test]
    fn octant_from_halfspaces() {
        let c = convert(
            3,
            &[v(&[-1.0, 0.0, 0.0]), v(&[0.0, -1.0, 0.0]), v(&[0.0, 0.0, -1.0])],
            DEFAULT_DIM_CAP,
        )
        .unwrap();
        assert!(c.lines.is_empty());
        assert_eq!(c.rays.len(), 3);
    }

    #[test]
    fn opposite_halfspaces_leave_a_plane() {
        let c = convert(3, &[v(&[0.0, 0.0, 1.0]), v(&[0.0, 0.0, -1.0])], DEFAULT_DIM_CAP).unwrap();
        assert!(c.rays.is_empty());
        assert_eq!(c.lines.len(), 2);
        for l in &c.lines {
            assert!(l[2].abs() < 1e-12);
        }
    }

    #[test]
    fn square_cone_pairs_rays() {
        // {x : |x| <= z, |y| <= z} has four extreme rays.
        let s = 1.0 / 2f64.sqrt();
        let c = convert(
            3,
            &[
                v(&[s, 0.0, -s]),
                v(&[-s, 0.0, -s]),
                v(&[0.0, s, -s]),
                v(&[0.0, -s, -s]),
            ],
            DEFAULT_DIM_CAP,
        )
        .unwrap();
        assert!(c.lines.is_empty());
        assert_eq!(c.rays.len(), 4);
        for r in &c.rays {
            assert!(r[2] > 0.0);
            assert!(r[0].abs() <= r[2] + 1e-9 && r[1].abs() <= r[2] + 1e-9);
        }
    }
}
