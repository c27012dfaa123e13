//! Closed-form and quadrature moments.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use crate::error::{Error, Result};
use crate::specfun::{dilog, integrate2d_with, QuadratureSpec};
use crate::subtense::dihedral_closed_form;

/// Mean and second moment of the keyhole angle for an observer uniform on
/// the unit circle, from the dilogarithm:
/// `E(Ω) = (π² − 6 ln²2 − 3 Li₂(1/4)) / (3π)`, `E(Ω²) = Li₂(1/4) − Li₂(−1/4)`.
pub fn circle_moments_closed() -> (f64, f64) {
    // Both arguments lie in the dilogarithm's domain.
    let l_plus = dilog(0.25).unwrap_or(f64::NAN);
    let l_minus = dilog(-0.25).unwrap_or(f64::NAN);
    let mean = (PI * PI - 6.0 * LN_2 * LN_2 - 3.0 * l_plus) / (3.0 * PI);
    (mean, l_plus - l_minus)
}

/// `(π/2, π²/4 + ln²2)`: moments of the apparent size of a right angle.
pub fn dihedral_right_moments_closed() -> (f64, f64) {
    (FRAC_PI_2, PI * PI / 4.0 + LN_2 * LN_2)
}

/// Inner abscissa `y ∈ (0, π)` where `cot a · sin y + cos x · cos y`
/// vanishes. Near `x = 0` and `x = π` the dihedral angle jumps across it
/// over a width of order `sin x`.
fn sign_change(x: f64, a: f64) -> Option<f64> {
    let c = x.cos();
    if c == 0.0 {
        return None;
    }
    let y0 = (c.abs() * a.sin()).atan2(-c.signum() * a.cos());
    (y0 > 0.0 && y0 < PI).then_some(y0)
}

/// `∫₀^π ∫₀^π g(x, y) sin y / (2π) dy dx` with the inner range split at the
/// dihedral sign change.
fn hemisphere_average(
    g: impl Fn(f64, f64) -> f64,
    a: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let f = |x: f64, y: f64| g(x, y) * y.sin() / (2.0 * PI);
    let pts = |x: f64| match sign_change(x, a) {
        Some(y0) => vec![0.0, y0, PI],
        None => vec![0.0, PI],
    };
    let left = integrate2d_with(f, (0.0, FRAC_PI_2), pts, spec)?.value;
    let right = integrate2d_with(f, (FRAC_PI_2, PI), pts, spec)?.value;
    Ok(left + right)
}

fn check_angle(a: f64) -> Result<()> {
    if a > 0.0 && a < PI {
        Ok(())
    } else {
        Err(Error::domain("dihedral_moments", format!("need a in (0, π), got {a}")))
    }
}

/// Mean and second moment of the apparent size of a base angle `a` for an
/// observer uniform on the unit sphere, by 2-D quadrature of the closed form
/// over the upper hemisphere (the lower one is its mirror image).
pub fn dihedral_moments_quad(a: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    check_angle(a)?;
    let alpha = |x: f64, y: f64| dihedral_closed_form(x, y, a).unwrap_or(f64::NAN);
    let m1 = hemisphere_average(alpha, a, spec)?;
    let m2 = hemisphere_average(|x, y| alpha(x, y).powi(2), a, spec)?;
    Ok((m1, m2))
}

/// `∫₀^π ∫₀^π atan²((cot a sin y + cos x cos y)/sin x) sin y / (2π) dx dy`.
pub fn dihedral_atan2_integral(a: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_angle(a)?;
    let cot = a.cos() / a.sin();
    let t2 = |x: f64, y: f64| {
        let (sy, cy) = y.sin_cos();
        ((cot * sy + x.cos() * cy) / x.sin()).atan().powi(2)
    };
    hemisphere_average(t2, a, spec)
}

/// `E(α² | a = π/3) = π²/12 + ∫∫ atan²(…) sin y / (2π) dx dy`.
pub fn dihedral_m2_pi3() -> Result<f64> {
    let spec = QuadratureSpec::with_tol(1e-10);
    Ok(PI * PI / 12.0 + dihedral_atan2_integral(PI / 3.0, &spec)?)
}
