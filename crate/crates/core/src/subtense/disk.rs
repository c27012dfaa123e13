//! Solid angle of a disk seen off-axis.
//!
//! In normalized units (disk radius 1) the observer stands at perpendicular
//! distance `x` from the disk plane, and the disk center is offset laterally
//! by `r` from the observer's foot. The closed form is
//!
//! ```text
//! Ω(r, x) = π(1 + sgn(1 − r))
//!         − 2x / √((1+r)² + x²) · ( K(m) + (1−r)/(1+r) · Π(n, m) ),
//! m = 4r / ((1+r)² + x²),   n = 4r / (1+r)².
//! ```
//!
//! At `r = 1` the second term is `0 · ∞`; its two-sided limit is
//! `Ω = π − 2x/√(4 + x²) · K(4/(4 + x²))`.

use std::f64::consts::PI;

use super::require_finite;
use crate::error::{Error, Result};
use crate::specfun::elliptic::{ellip_k_complement, ellip_pi_complement};
use crate::specfun::{integrate2d_with, QuadratureSpec};

/// Offsets closer than this to the rim use the dedicated `r = 1` branch.
const RIM_BAND: f64 = 1e-8;

/// Disk of radius `radius`, center offset `offset` from the observer's foot,
/// observer at perpendicular distance `distance` from the disk plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskScene {
    pub radius: f64,
    pub offset: f64,
    pub distance: f64,
}

impl DiskScene {
    pub fn new(radius: f64, offset: f64, distance: f64) -> Result<Self> {
        for (name, v) in [("radius", radius), ("offset", offset), ("distance", distance)] {
            require_finite("disk", name, v)?;
        }
        if !(radius > 0.0) {
            return Err(Error::domain("disk", format!("radius must be positive, got {radius}")));
        }
        if offset < 0.0 || distance < 0.0 {
            return Err(Error::domain("disk", "offset and distance must be nonnegative"));
        }
        if offset == radius && distance == 0.0 {
            return Err(Error::domain("disk", "observer on the rim in the disk plane"));
        }
        Ok(DiskScene {
            radius,
            offset,
            distance,
        })
    }

    /// `(r, x)` in units of the disk radius.
    pub fn normalized(&self) -> (f64, f64) {
        (self.offset / self.radius, self.distance / self.radius)
    }
}

fn check_normalized(op: &'static str, r: f64, x: f64) -> Result<()> {
    require_finite(op, "r", r)?;
    require_finite(op, "x", x)?;
    if r < 0.0 || x < 0.0 {
        return Err(Error::domain(op, format!("need r >= 0 and x >= 0, got ({r}, {x})")));
    }
    if r == 1.0 && x == 0.0 {
        return Err(Error::domain(op, "(r, x) = (1, 0) is the rim branch point"));
    }
    Ok(())
}

/// Exact solid angle of a unit disk at normalized offset `r` and distance `x`.
pub fn disk_solid_angle(r: f64, x: f64) -> Result<f64> {
    check_normalized("disk_solid_angle", r, x)?;
    if x == 0.0 {
        return Ok(if r < 1.0 { 2.0 * PI } else { 0.0 });
    }

    let x2 = x * x;
    if (r - 1.0).abs() < RIM_BAND {
        let s = 4.0 + x2;
        let k = ellip_k_complement(x2 / s);
        return Ok(PI - 2.0 * x / s.sqrt() * k);
    }

    let s = (1.0 + r).powi(2) + x2;
    // 1 − m and 1 − n formed without cancellation.
    let mc = ((1.0 - r).powi(2) + x2) / s;
    let ratio = (1.0 - r) / (1.0 + r);
    let n = 4.0 * r / (1.0 + r).powi(2);
    let nc = ratio * ratio;
    let base = if r < 1.0 { 2.0 * PI } else { 0.0 };
    let k = ellip_k_complement(mc);
    let pi3 = ellip_pi_complement(n, nc, mc);
    let omega = base - 2.0 * x / s.sqrt() * (k + ratio * pi3);
    Ok(omega.clamp(0.0, 2.0 * PI))
}

/// Solid angle of a disk of any radius; reduces to [`disk_solid_angle`]
/// by scale invariance.
pub fn disk_solid_angle_general(scene: &DiskScene) -> Result<f64> {
    let (r, x) = scene.normalized();
    disk_solid_angle(r, x)
}

/// Brute-force solid angle: the flux integral
/// `∬ x / (x² + y² + z²)^{3/2} dy dz` over the disk `(y − r)² + z² ≤ 1`,
/// evaluated in polar coordinates about the disk center with adaptive
/// quadrature. Independent of the elliptic-integral closed form.
pub fn disk_solid_angle_oracle(r: f64, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_normalized("disk_solid_angle_oracle", r, x)?;
    if !(x > 0.0) {
        return Err(Error::domain("disk_solid_angle_oracle", "needs x > 0"));
    }
    let x2r2 = x * x + r * r;
    // ψ is the polar angle about the disk center, mirrored onto [0, π];
    // the integrand peaks at ψ = π, the rim point nearest the foot.
    let integrand = |psi: f64, rho: f64| {
        let d2 = x2r2 + 2.0 * r * rho * psi.cos() + rho * rho;
        2.0 * x * rho / (d2 * d2.sqrt())
    };
    let pts = |_psi: f64| {
        if r > 0.0 && r < 1.0 {
            // Radius at which the ray ψ = π passes the observer's foot.
            vec![0.0, r, 1.0]
        } else {
            vec![0.0, 1.0]
        }
    };
    Ok(integrate2d_with(integrand, (0.0, PI), pts, spec)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::with_tol(1e-11)
    }

    #[test]
    fn in_plane_values() {
        assert_eq!(disk_solid_angle(0.5, 0.0).unwrap(), 2.0 * PI);
        assert_eq!(disk_solid_angle(2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn on_axis_closed_form() {
        let exact = 2.0 * PI * (1.0 - 1.0 / 2f64.sqrt());
        assert!((disk_solid_angle(0.0, 1.0).unwrap() - exact).abs() < 1e-14);
        assert!((disk_solid_angle_oracle(0.0, 1.0, &spec()).unwrap() - exact).abs() < 1e-10);
    }

    #[test]
    fn matches_oracle_off_axis() {
        for (r, x) in [(2.0, 1.0), (0.5, 0.3), (1.0, 0.5), (3.0, 0.2), (0.9, 2.0)] {
            let c = disk_solid_angle(r, x).unwrap();
            let o = disk_solid_angle_oracle(r, x, &spec()).unwrap();
            assert!((c - o).abs() < 1e-9, "({r}, {x}): {c} vs {o}");
        }
    }

    #[test]
    fn rim_branch_is_continuous() {
        // ∂Ω/∂r ≈ −3.3 here, so the one-sided gaps are ~3.3e-4; their
        // midpoint matches the branch value to second order.
        let on = disk_solid_angle(1.0, 0.5).unwrap();
        let above = disk_solid_angle_oracle(1.0001, 0.5, &spec()).unwrap();
        let below = disk_solid_angle_oracle(0.9999, 0.5, &spec()).unwrap();
        assert!((above - on).abs() < 4e-4 && (below - on).abs() < 4e-4);
        assert!((0.5 * (above + below) - on).abs() < 1e-7);
        for x in [0.25, 0.5, 1.0, 2.0] {
            let at = disk_solid_angle(1.0, x).unwrap();
            for r in [1.0 - 1e-6, 1.0 + 1e-6] {
                assert!((disk_solid_angle(r, x).unwrap() - at).abs() <= 1e-4);
            }
        }
    }

    #[test]
    fn inverse_cube_far_field() {
        let r = 50.0;
        let w = disk_solid_angle(r, 1.0).unwrap();
        assert!((w * r * r * r / PI - 1.0).abs() < 5e-3);
    }

    #[test]
    fn scale_invariance() {
        let a = disk_solid_angle_general(&DiskScene::new(1.0, 2.0, 1.0).unwrap()).unwrap();
        let b = disk_solid_angle_general(&DiskScene::new(0.5, 1.0, 0.5).unwrap()).unwrap();
        let c = disk_solid_angle(2.0, 1.0).unwrap();
        assert_eq!(a, c);
        assert!((b - c).abs() < 1e-15);
    }

    #[test]
    fn domain() {
        assert!(disk_solid_angle(1.0, 0.0).is_err());
        assert!(disk_solid_angle(-0.1, 1.0).is_err());
        assert!(disk_solid_angle(0.5, -1.0).is_err());
        assert!(DiskScene::new(0.0, 1.0, 1.0).is_err());
        assert!(DiskScene::new(1.0, 1.0, 0.0).is_err());
        assert!(disk_solid_angle_oracle(0.5, 0.0, &spec()).is_err());
    }
}
