//! A segment `[r − 1, r + 1]` on a wall, seen from distance `x` along the floor.

use super::require_finite;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallScene {
    /// Height of the segment's midpoint; the segment has half-length 1.
    pub r: f64,
    /// Observer distance from the wall.
    pub x: f64,
}

impl WallScene {
    pub fn new(r: f64, x: f64) -> Result<Self> {
        require_finite("wall", "r", r)?;
        require_finite("wall", "x", x)?;
        if !(r > 1.0) {
            return Err(Error::domain("wall", format!("need r > 1, got {r}")));
        }
        if x < 0.0 {
            return Err(Error::domain("wall", format!("need x >= 0, got {x}")));
        }
        Ok(WallScene { r, x })
    }
}

/// Angle subtended by the segment at the observer's eye.
///
/// Law of cosines on the rays `u = (−x, r − 1)` and `v = (−x, r + 1)`,
/// written as `atan2(|u × v|, u · v) = atan2(2x, x² + r² − 1)` so that
/// small angles keep full relative precision.
pub fn wall_angle(scene: &WallScene) -> Result<f64> {
    let WallScene { r, x } = *scene;
    if x == 0.0 {
        return Err(Error::domain("wall_angle", "observer at the foot of the wall (x = 0)"));
    }
    Ok((2.0 * x).atan2(x * x + (r * r - 1.0)))
}

/// Best viewing distance and the angle achieved there:
/// `x_max = √(r² − 1)`, `Ω_max = arcsin(1/r)`.
pub fn wall_optimum(r: f64) -> Result<(f64, f64)> {
    require_finite("wall_optimum", "r", r)?;
    if !(r > 1.0) {
        return Err(Error::domain("wall_optimum", format!("need r > 1, got {r}")));
    }
    let x_max = ((r - 1.0) * (r + 1.0)).sqrt();
    Ok((x_max, (1.0 / r).asin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, SQRT_2};

    fn law_of_cosines(r: f64, x: f64) -> f64 {
        let a2 = x * x + (r - 1.0).powi(2);
        let b2 = x * x + (r + 1.0).powi(2);
        ((-4.0 + a2 + b2) / (2.0 * a2.sqrt() * b2.sqrt())).acos()
    }

    #[test]
    fn optimum_geometry() {
        let w = wall_angle(&WallScene::new(SQRT_2, 1.0).unwrap()).unwrap();
        assert!((w - FRAC_PI_4).abs() < 1e-15);
        let (x, om) = wall_optimum(2.0).unwrap();
        assert!((x - 3f64.sqrt()).abs() < 1e-15);
        assert!((om - FRAC_PI_6).abs() < 1e-15);
        assert!((om - (x / 2.0).acos()).abs() < 1e-15);
        let (x, _) = wall_optimum(10.0).unwrap();
        assert!((x / 10.0 - 1.0).abs() < 0.01);
    }

    #[test]
    fn arctan_difference_and_cosine_forms_agree() {
        for (r, x) in [(2.0, 1.0), (1.1, 0.3), (5.0, 7.0), (1.5, 0.01)] {
            let w = wall_angle(&WallScene::new(r, x).unwrap()).unwrap();
            let diff = ((r + 1.0) / x).atan() - ((r - 1.0) / x).atan();
            assert!((w - diff).abs() < 1e-14);
            // arccos is ill-conditioned as w → π, hence the looser bound.
            assert!((w - law_of_cosines(r, x)).abs() < 1e-9);
        }
        let w = wall_angle(&WallScene::new(2.0, 1.0).unwrap()).unwrap();
        assert!((w - (3f64.atan() - 1f64.atan())).abs() < 1e-15);
    }

    #[test]
    fn inverse_square_far_field() {
        let w = wall_angle(&WallScene::new(1000.0, 1.0).unwrap()).unwrap();
        assert!((w * 1000.0 * 1000.0 / 2.0 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn domain() {
        assert!(WallScene::new(1.0, 1.0).is_err());
        assert!(WallScene::new(2.0, -1.0).is_err());
        assert!(wall_angle(&WallScene::new(2.0, 0.0).unwrap()).is_err());
        assert!(wall_optimum(0.5).is_err());
    }
}
