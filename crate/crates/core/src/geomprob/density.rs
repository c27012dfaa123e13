//! Densities of the keyhole angle and of the apparent right angle.
//!
//! The two keyhole densities have an inverse square-root singularity at the
//! upper end of their support. Under `ω = atan((4/3) sin u)` they become
//! `(2/π) du` (circle) and `sin u du` (sphere) on `(0, π/2)`, so moments are
//! computed in `u` where the integrand is smooth.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::Result;
use crate::specfun::{integrate, integrate_points, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    KeyholeCircle,
    KeyholeSphere,
    RightDihedral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density {
    pub support_lo: f64,
    pub support_hi: f64,
    kind: Kind,
}

/// `atan(4/3)`, the largest keyhole angle (also `2 atan(1/2)`).
fn keyhole_max() -> f64 {
    (4.0f64 / 3.0).atan()
}

/// Density of the keyhole angle `Ω` for an observer uniform on the unit circle:
/// `6/π · 1/(cos²ω √(16 − 9 tan²ω))` on `(0, atan(4/3))`.
pub fn circle_pdf() -> Density {
    Density {
        support_lo: 0.0,
        support_hi: keyhole_max(),
        kind: Kind::KeyholeCircle,
    }
}

/// Density of `Ω` for an observer uniform (by area) on the unit sphere:
/// `9/4 · tan ω/(cos²ω √(16 − 9 tan²ω))` on `(0, atan(4/3))`.
pub fn sphere_pdf() -> Density {
    Density {
        support_lo: 0.0,
        support_hi: keyhole_max(),
        kind: Kind::KeyholeSphere,
    }
}

/// Density of the apparent size of a right angle seen from the unit sphere:
/// `−(1/π) ln|cos α| / sin²α` on `(0, π)`.
pub fn right_dihedral_pdf() -> Density {
    Density {
        support_lo: 0.0,
        support_hi: PI,
        kind: Kind::RightDihedral,
    }
}

/// `−ln|cos α| / sin²α` without cancellation on either side of `π/2`.
fn neg_log_cos_over_sin2(alpha: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    let s2 = s * s;
    if s2 == 0.0 {
        return 0.5;
    }
    let neg_log = if c.abs() < s.abs() {
        -c.abs().ln()
    } else {
        // ln|cos α| = ½ ln(1 − sin²α), accurate for small sin α.
        -0.5 * (-s2).ln_1p()
    };
    neg_log / s2
}

impl Density {
    /// Density at `w`; zero off the open support.
    pub fn eval(&self, w: f64) -> f64 {
        if !(w > self.support_lo && w < self.support_hi) {
            return 0.0;
        }
        match self.kind {
            Kind::KeyholeCircle | Kind::KeyholeSphere => {
                let (s, c) = w.sin_cos();
                let t = s / c;
                let q = (4.0 - 3.0 * t) * (4.0 + 3.0 * t);
                if q <= 0.0 {
                    return 0.0;
                }
                let base = 1.0 / (c * c * q.sqrt());
                if self.kind == Kind::KeyholeCircle {
                    6.0 / PI * base
                } else {
                    2.25 * t * base
                }
            }
            Kind::RightDihedral => neg_log_cos_over_sin2(w) / PI,
        }
    }

    /// `∫ g(w) pdf(w) dw` over the support.
    pub fn expect(&self, g: impl Fn(f64) -> f64, spec: &QuadratureSpec) -> Result<f64> {
        let omega = |u: f64| (4.0 / 3.0 * u.sin()).atan();
        let v = match self.kind {
            Kind::KeyholeCircle => 2.0 / PI * integrate(|u| g(omega(u)), 0.0, FRAC_PI_2, spec)?.value,
            Kind::KeyholeSphere => integrate(|u| g(omega(u)) * u.sin(), 0.0, FRAC_PI_2, spec)?.value,
            Kind::RightDihedral => {
                // Logarithmic singularity at π/2: integrate each side separately.
                integrate_points(|a| g(a) * self.eval(a), &[0.0, FRAC_PI_2, PI], spec)?.value
            }
        };
        Ok(v)
    }

    pub fn total(&self, spec: &QuadratureSpec) -> Result<f64> {
        self.expect(|_| 1.0, spec)
    }

    pub fn mean(&self, spec: &QuadratureSpec) -> Result<f64> {
        self.expect(|w| w, spec)
    }

    pub fn second_moment(&self, spec: &QuadratureSpec) -> Result<f64> {
        self.expect(|w| w * w, spec)
    }

    /// `P(W ≤ w)`, in closed form for the keyhole densities.
    pub fn cdf(&self, w: f64, spec: &QuadratureSpec) -> Result<f64> {
        if w <= self.support_lo {
            return Ok(0.0);
        }
        if w >= self.support_hi {
            return Ok(1.0);
        }
        let u = || (0.75 * w.tan()).clamp(-1.0, 1.0).asin();
        Ok(match self.kind {
            Kind::KeyholeCircle => 2.0 / PI * u(),
            Kind::KeyholeSphere => 1.0 - u().cos(),
            Kind::RightDihedral => {
                let pts: &[f64] = if w > FRAC_PI_2 { &[0.0, FRAC_PI_2, w] } else { &[0.0, w] };
                integrate_points(|a| self.eval(a), pts, spec)?.value
            }
        })
    }
}
