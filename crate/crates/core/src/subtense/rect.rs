//! Solid angle of an axis-aligned rectangle in a plane parallel to the
//! observer's image plane.
//!
//! With the observer's foot at the origin of the rectangle's plane and the
//! observer at distance `d`, each corner contributes
//! `F(y, z) = atan(y z / (d √(d² + y² + z²)))` and
//! `Ω = F(y₂, z₂) − F(y₁, z₂) − F(y₂, z₁) + F(y₁, z₁)`.

use std::f64::consts::FRAC_1_SQRT_2;

use super::require_finite;
use crate::error::{Error, Result};
use crate::specfun::{integrate2d_with, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectScene {
    pub d: f64,
    pub y1: f64,
    pub y2: f64,
    pub z1: f64,
    pub z2: f64,
}

impl RectScene {
    pub fn new(d: f64, y1: f64, y2: f64, z1: f64, z2: f64) -> Result<Self> {
        for (name, v) in [("d", d), ("y1", y1), ("y2", y2), ("z1", z1), ("z2", z2)] {
            require_finite("rect", name, v)?;
        }
        if !(d > 0.0) {
            return Err(Error::domain("rect", format!("distance d must be positive, got {d}")));
        }
        if !(y1 < y2 && z1 < z2) {
            return Err(Error::domain("rect", "corners need y1 < y2 and z1 < z2"));
        }
        Ok(RectScene { d, y1, y2, z1, z2 })
    }

    /// Billboard of length `l ≥ 1` and width `1/l` centered at
    /// `(r/√2, r/√2)`, seen from distance `x`.
    pub fn billboard(x: f64, r: f64, l: f64) -> Result<Self> {
        require_finite("billboard", "r", r)?;
        require_finite("billboard", "l", l)?;
        if !(l >= 1.0) {
            return Err(Error::domain("billboard", format!("length must be >= 1, got {l}")));
        }
        let c = r * FRAC_1_SQRT_2;
        RectScene::new(x, c - 0.5 * l, c + 0.5 * l, c - 0.5 / l, c + 0.5 / l)
    }
}

/// Common radius with the cross term summed first, so `radius(d, y, z)` and
/// `radius(d, z, y)` are bitwise equal.
#[inline]
fn radius(d: f64, y: f64, z: f64) -> f64 {
    (d * d + (y * y + z * z)).sqrt()
}

#[inline]
fn corner(d: f64, y: f64, z: f64) -> f64 {
    (y * z / (d * radius(d, y, z))).atan()
}

/// `∂F/∂y`: the flux through the edge at abscissa `y`, from `0` to `z`.
#[inline]
fn corner_dy(d: f64, y: f64, z: f64) -> f64 {
    d * z / ((d * d + y * y) * radius(d, y, z))
}

pub fn rect_solid_angle(scene: &RectScene) -> f64 {
    let RectScene { d, y1, y2, z1, z2 } = *scene;
    corner(d, y2, z2) - corner(d, y1, z2) - corner(d, y2, z1) + corner(d, y1, z1)
}

pub fn billboard_solid_angle(x: f64, r: f64, l: f64) -> Result<f64> {
    Ok(rect_solid_angle(&RectScene::billboard(x, r, l)?))
}

/// Analytic derivative of [`billboard_solid_angle`] with respect to `l`.
pub fn billboard_solid_angle_dl(x: f64, r: f64, l: f64) -> Result<f64> {
    let RectScene { d, y1, y2, z1, z2 } = RectScene::billboard(x, r, l)?;
    // y-edges move by ±1/2, z-edges by ∓1/(2l²); ∂F/∂z(y, z) = corner_dy(d, z, y).
    // Each corner's two partials are paired so the l = 1, y = z case cancels exactly.
    let dz = 0.5 / (l * l);
    let t22 = 0.5 * corner_dy(d, y2, z2) - dz * corner_dy(d, z2, y2);
    let t12 = 0.5 * corner_dy(d, y1, z2) + dz * corner_dy(d, z2, y1);
    let t21 = 0.5 * corner_dy(d, y2, z1) + dz * corner_dy(d, z1, y2);
    let t11 = 0.5 * corner_dy(d, y1, z1) - dz * corner_dy(d, z1, y1);
    Ok(t22 + t12 - t21 - t11)
}

/// Brute-force solid angle: `∬ d / (d² + y² + z²)^{3/2} dz dy` over the
/// rectangle by adaptive quadrature.
pub fn rect_solid_angle_oracle(scene: &RectScene, spec: &QuadratureSpec) -> Result<f64> {
    let RectScene { d, y1, y2, z1, z2 } = *scene;
    let d2 = d * d;
    let f = |y: f64, z: f64| {
        let q = d2 + y * y + z * z;
        d / (q * q.sqrt())
    };
    // Split the inner range at the foot, where the integrand peaks.
    let pts = |_y: f64| {
        if z1 < 0.0 && 0.0 < z2 {
            vec![z1, 0.0, z2]
        } else {
            vec![z1, z2]
        }
    };
    if y1 < 0.0 && 0.0 < y2 {
        let left = integrate2d_with(f, (y1, 0.0), pts, spec)?.value;
        let right = integrate2d_with(f, (0.0, y2), pts, spec)?.value;
        Ok(left + right)
    } else {
        Ok(integrate2d_with(f, (y1, y2), pts, spec)?.value)
    }
}
