//! The segment `[−1/2, 1/2]` on the y-axis seen from the unit circle or the
//! unit sphere.

use std::f64::consts::{PI, TAU};

use super::require_finite;
use crate::error::{Error, Result};

const FOUR_THIRDS: f64 = 4.0 / 3.0;

/// Observer on the unit sphere at `(cos θ sin φ, sin θ sin φ, cos φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
}

impl SpherePoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        require_finite("sphere_point", "theta", theta)?;
        require_finite("sphere_point", "phi", phi)?;
        if !(0.0..TAU).contains(&theta) || !(0.0..=PI).contains(&phi) {
            return Err(Error::domain(
                "sphere_point",
                format!("need theta in [0, 2π) and phi in [0, π], got ({theta}, {phi})"),
            ));
        }
        Ok(SpherePoint { theta, phi })
    }

    pub fn to_cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [ct * sp, st * sp, cp]
    }
}

/// Angle subtended by the segment from the circle point at angle `theta`:
/// `atan((4/3)|cos θ|)`.
pub fn keyhole_angle_circle(theta: f64) -> f64 {
    (FOUR_THIRDS * theta.cos().abs()).atan()
}

/// Angle subtended by the segment from a sphere point:
/// `atan((4/3)√(1 − sin²θ sin²φ))`.
pub fn keyhole_angle_sphere(p: &SpherePoint) -> f64 {
    let s = p.theta.sin() * p.phi.sin();
    (FOUR_THIRDS * ((1.0 - s) * (1.0 + s)).max(0.0).sqrt()).atan()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    /// Law-of-cosines form with the observer-to-endpoint distances squared
    /// equal to 5/4 ∓ s, where s = sin θ sin φ.
    fn arccos_form(s: f64) -> f64 {
        (3.0 / (25.0 - 16.0 * s * s).sqrt()).acos()
    }

    #[test]
    fn circle_values() {
        assert!(keyhole_angle_circle(FRAC_PI_2).abs() < 1e-15);
        assert_eq!(keyhole_angle_circle(0.0), FOUR_THIRDS.atan());
        let v = keyhole_angle_circle(FRAC_PI_4);
        assert!((v - (3.0 / 17f64.sqrt()).acos()).abs() < 1e-15);
        for th in [0.1, 1.0, 2.5, 4.0, 6.0] {
            assert!((keyhole_angle_circle(th) - arccos_form(f64::sin(th))).abs() < 1e-14);
            assert!((keyhole_angle_circle(th) - keyhole_angle_circle(th + PI)).abs() < 1e-14);
        }
    }

    #[test]
    fn sphere_values() {
        let p = SpherePoint::new(FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!(keyhole_angle_sphere(&p).abs() < 1e-7);
        for th in [0.0, 1.0, 3.0, 5.5] {
            let p = SpherePoint::new(th, 0.0).unwrap();
            assert_eq!(keyhole_angle_sphere(&p), FOUR_THIRDS.atan());
            let eq = SpherePoint::new(th, FRAC_PI_2).unwrap();
            assert!((keyhole_angle_sphere(&eq) - keyhole_angle_circle(th)).abs() < 1e-15);
        }
        let p = SpherePoint::new(FRAC_PI_2, FRAC_PI_4).unwrap();
        assert!((keyhole_angle_sphere(&p) - (3.0 / 17f64.sqrt()).acos()).abs() < 1e-15);
    }

    #[test]
    fn cartesian_is_unit() {
        let p = SpherePoint::new(2.0, 0.7).unwrap();
        let [x, y, z] = p.to_cartesian();
        assert!(((x * x + y * y + z * z).sqrt() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn domain() {
        assert!(SpherePoint::new(TAU, 0.0).is_err());
        assert!(SpherePoint::new(0.0, -0.1).is_err());
    }
}
