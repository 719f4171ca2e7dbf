//! Small LP wrappers over `minilp` used for membership, redundancy and
//! ray-shooting queries on generator representations.
//!
//! Every feasibility question is posed as "minimize the sup-norm residual"
//! rather than with hard equality rows, so roundoff in the generators cannot
//! flip a genuinely feasible instance to infeasible.

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};

use crate::geom::Vector;

const FREE: (f64, f64) = (f64::NEG_INFINITY, f64::INFINITY);

/// Best sup-norm residual for v ~ sum lambda_i rays_i + sum nu_j lines_j,
/// lambda >= 0, nu free.
pub(crate) fn conic_residual(rays: &[Vector], lines: &[Vector], v: &Vector) -> f64 {
    let dim = v.dim();
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let t = p.add_var(1.0, (0.0, f64::INFINITY));
    let lam: Vec<Variable> = rays.iter().map(|_| p.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let nu: Vec<Variable> = lines.iter().map(|_| p.add_var(0.0, FREE)).collect();
    for j in 0..dim {
        let mut row: Vec<(Variable, f64)> = Vec::with_capacity(rays.len() + lines.len() + 1);
        for (i, r) in rays.iter().enumerate() {
            row.push((lam[i], r[j]));
        }
        for (k, l) in lines.iter().enumerate() {
            row.push((nu[k], l[j]));
        }
        let mut up = row.clone();
        up.push((t, -1.0));
        p.add_constraint(&up, ComparisonOp::Le, v[j]);
        let mut dn = row;
        dn.push((t, 1.0));
        p.add_constraint(&dn, ComparisonOp::Ge, v[j]);
    }
    match p.solve() {
        Ok(sol) => sol.objective(),
        Err(_) => f64::INFINITY,
    }
}

/// v in cone(rays) + span(lines), within tolerance `tol` (scaled by |v|).
pub(crate) fn cone_contains(rays: &[Vector], lines: &[Vector], v: &Vector, tol: f64) -> bool {
    conic_residual(rays, lines, v) <= tol * (1.0 + v.norm())
}

/// Best sup-norm residual for x ~ conv(points) + cone(rays) + span(lines).
pub(crate) fn body_residual(
    points: &[Vector],
    rays: &[Vector],
    lines: &[Vector],
    x: &Vector,
) -> f64 {
    if points.is_empty() {
        return f64::INFINITY;
    }
    let dim = x.dim();
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let t = p.add_var(1.0, (0.0, f64::INFINITY));
    let alpha: Vec<Variable> = points.iter().map(|_| p.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let lam: Vec<Variable> = rays.iter().map(|_| p.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let nu: Vec<Variable> = lines.iter().map(|_| p.add_var(0.0, FREE)).collect();
    let ones: Vec<(Variable, f64)> = alpha.iter().map(|a| (*a, 1.0)).collect();
    p.add_constraint(&ones, ComparisonOp::Eq, 1.0);
    for j in 0..dim {
        let mut row: Vec<(Variable, f64)> = Vec::with_capacity(points.len() + rays.len() + lines.len() + 1);
        for (i, pt) in points.iter().enumerate() {
            row.push((alpha[i], pt[j]));
        }
        for (i, r) in rays.iter().enumerate() {
            row.push((lam[i], r[j]));
        }
        for (k, l) in lines.iter().enumerate() {
            row.push((nu[k], l[j]));
        }
        let mut up = row.clone();
        up.push((t, -1.0));
        p.add_constraint(&up, ComparisonOp::Le, x[j]);
        let mut dn = row;
        dn.push((t, 1.0));
        p.add_constraint(&dn, ComparisonOp::Ge, x[j]);
    }
    match p.solve() {
        Ok(sol) => sol.objective(),
        Err(_) => f64::INFINITY,
    }
}

/// x in conv(points) + cone(rays) + span(lines), within `tol` (scaled).
pub(crate) fn body_contains(
    points: &[Vector],
    rays: &[Vector],
    lines: &[Vector],
    x: &Vector,
    tol: f64,
) -> bool {
    body_residual(points, rays, lines, x) <= tol * (1.0 + x.norm())
}

/// Largest t with anchor + t * dir inside the body; `None` when unbounded.
///
/// The anchor is assumed to belong to the body.
pub(crate) fn ray_shoot(
    points: &[Vector],
    rays: &[Vector],
    lines: &[Vector],
    anchor: &Vector,
    dir: &Vector,
) -> Option<f64> {
    let dim = anchor.dim();
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let t = p.add_var(1.0, (0.0, f64::INFINITY));
    let alpha: Vec<Variable> = points.iter().map(|_| p.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let lam: Vec<Variable> = rays.iter().map(|_| p.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let nu: Vec<Variable> = lines.iter().map(|_| p.add_var(0.0, FREE)).collect();
    let ones: Vec<(Variable, f64)> = alpha.iter().map(|a| (*a, 1.0)).collect();
    p.add_constraint(&ones, ComparisonOp::Eq, 1.0);
    for j in 0..dim {
        let mut row: Vec<(Variable, f64)> = Vec::with_capacity(points.len() + rays.len() + lines.len() + 1);
        for (i, pt) in points.iter().enumerate() {
            row.push((alpha[i], pt[j]));
        }
        for (i, r) in rays.iter().enumerate() {
            row.push((lam[i], r[j]));
        }
        for (k, l) in lines.iter().enumerate() {
            row.push((nu[k], l[j]));
        }
        row.push((t, -dir[j]));
        p.add_constraint(&row, ComparisonOp::Eq, anchor[j]);
    }
    match p.solve() {
        // minilp reports an unbounded maximization as an infinite objective.
        Ok(sol) if sol.objective().is_finite() => Some(sol.objective()),
        Ok(_) => None,
        Err(minilp::Error::Unbounded) => None,
        // Roundoff can push the equality system infeasible when the anchor
        // sits exactly on the boundary; treat that as "cannot move".
        Err(_) => Some(0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    #[test]
    fn cone_membership_quadrant() {
        let rays = [v(&[-1.0, 0.0]), v(&[0.0, 1.0])];
        assert!(cone_contains(&rays, &[], &v(&[-2.0, 3.0]), 1e-9));
        assert!(!cone_contains(&rays, &[], &v(&[1.0, 1.0]), 1e-9));
        assert!(cone_contains(&rays, &[], &v(&[0.0, 0.0]), 1e-9));
    }

    #[test]
    fn cone_membership_with_lines() {
        let rays = [v(&[0.0, 1.0])];
        let lines = [v(&[1.0, 0.0])];
        assert!(cone_contains(&rays, &lines, &v(&[100.0, 0.5]), 1e-9));
        assert!(!cone_contains(&rays, &lines, &v(&[0.0, -0.5]), 1e-9));
    }

    #[test]
    fn body_membership_square() {
        let pts = [v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])];
        assert!(body_contains(&pts, &[], &[], &v(&[0.5, 0.5]), 1e-9));
        assert!(body_contains(&pts, &[], &[], &v(&[1.0, 1.0]), 1e-9));
        assert!(!body_contains(&pts, &[], &[], &v(&[1.1, 0.5]), 1e-9));
    }

    #[test]
    fn ray_shoot_square() {
        let pts = [v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])];
        let t = ray_shoot(&pts, &[], &[], &v(&[0.5, 0.5]), &v(&[1.0, 0.0])).unwrap();
        assert!((t - 0.5).abs() <= 1e-9);
        let up = ray_shoot(&pts, &[v(&[0.0, 1.0])], &[], &v(&[0.5, 0.5]), &v(&[0.0, 1.0]));
        assert!(up.is_none());
    }
}
