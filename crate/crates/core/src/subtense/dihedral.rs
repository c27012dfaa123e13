//! Apparent magnitude of the plane angle `∠BDC` (vertex `D` at the origin)
//! seen from a point `A` on the unit sphere.
//!
//! The apparent magnitude is the dihedral angle between the planes through
//! the origin spanned by `A, B` and by `A, C`, equivalently the angle at `A`
//! of the spherical triangle `ABC`. Its side `a = BC` is the true angle.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

const UNIT_TOL: f64 = 1e-9;
const DEGENERATE_TOL: f64 = 1e-12;

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// `B = (1, 0, 0)` and `C = (cos a, sin a, 0)`: a base angle of size `a`.
pub fn base_vectors(a: f64) -> (Vec3, Vec3) {
    let (s, c) = a.sin_cos();
    ([1.0, 0.0, 0.0], [c, s, 0.0])
}

/// Dihedral angle between the normals `A × B` and `A × C`.
pub fn dihedral_angle(a: &Vec3, b: &Vec3, c: &Vec3) -> Result<f64> {
    for (name, v) in [("A", a), ("B", b), ("C", c)] {
        let n = norm(v);
        if !n.is_finite() || (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::domain("dihedral_angle", format!("{name} is not a unit vector")));
        }
    }
    let n1 = cross(a, b);
    let n2 = cross(a, c);
    if norm(&n1) < DEGENERATE_TOL || norm(&n2) < DEGENERATE_TOL {
        return Err(Error::Degenerate("observer collinear with a side of the angle".into()));
    }
    // atan2 of |n1 × n2| and n1 · n2: the arccos of the normalized dot
    // product without its loss of precision near 0 and π.
    Ok(norm(&cross(&n1, &n2)).atan2(dot(&n1, &n2)))
}

/// Sphere point with arc `y` from `B = (1, 0, 0)` and angle `π − x` at `B`
/// measured from the arc `BC` (for any `C` in the base plane with positive
/// second coordinate). Under the measure `sin y dx dy / (2π)` on `[0, π]²`
/// this point is uniform on the upper hemisphere.
pub fn dihedral_observer(x: f64, y: f64) -> Vec3 {
    let (sy, cy) = y.sin_cos();
    let (sx, cx) = x.sin_cos();
    [cy, -sy * cx, sy * sx]
}

/// Closed form of the dihedral angle at [`dihedral_observer`]`(x, y)` for
/// base angle `a`:
/// `α = π/2 − atan((cot a · sin y + cos x · cos y) / sin x)`.
pub fn dihedral_closed_form(x: f64, y: f64, a: f64) -> Result<f64> {
    let sx = x.sin();
    if !(x > 0.0 && x < std::f64::consts::PI) || !y.is_finite() {
        return Err(Error::domain("dihedral_closed_form", format!("need sin x > 0, got x = {x}")));
    }
    if !(a > 0.0 && a < std::f64::consts::PI) {
        return Err(Error::domain("dihedral_closed_form", format!("need a in (0, π), got {a}")));
    }
    let (sa, ca) = a.sin_cos();
    let (sy, cy) = y.sin_cos();
    Ok(FRAC_PI_2 - ((ca / sa * sy + x.cos() * cy) / sx).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, PI};

    #[test]
    fn pole_sees_the_true_angle() {
        let a = [0.0, 0.0, 1.0];
        let (b, c) = base_vectors(FRAC_PI_2);
        assert!((dihedral_angle(&a, &b, &c).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let (b, c) = base_vectors(FRAC_PI_3);
        assert!((dihedral_angle(&a, &b, &c).unwrap() - FRAC_PI_3).abs() < 1e-15);
    }

    #[test]
    fn closed_form_agrees_with_cross_products() {
        for a in [FRAC_PI_2, FRAC_PI_3, 2.0] {
            let (b, c) = base_vectors(a);
            for i in 1..20 {
                for j in 1..20 {
                    let (x, y) = (PI * i as f64 / 20.0, PI * j as f64 / 20.0);
                    let obs = dihedral_observer(x, y);
                    let cross_form = dihedral_angle(&obs, &b, &c).unwrap();
                    let closed = dihedral_closed_form(x, y, a).unwrap();
                    assert!((cross_form - closed).abs() < 1e-12, "{a} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn center_value() {
        let v = dihedral_closed_form(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((v - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        let (b, c) = base_vectors(FRAC_PI_2);
        assert!(matches!(dihedral_angle(&b, &b, &c), Err(Error::Degenerate(_))));
        assert!(dihedral_angle(&[2.0, 0.0, 0.0], &b, &c).is_err());
        assert!(dihedral_closed_form(0.0, 1.0, FRAC_PI_3).is_err());
        assert!(dihedral_closed_form(PI, 1.0, FRAC_PI_3).is_err());
    }
}
