//! Real dilogarithm `Li₂(ξ) = Σ_{k≥1} ξᵏ / k²` for `ξ ≤ 1`.
//!
//! The power series is summed only for `|ξ| ≤ 1/2`. Other arguments are
//! mapped into that disk by reflection, Landen's identity and inversion.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

fn series(x: f64) -> f64 {
    // |x| ≤ 1/2: terms fall at least as fast as 2^-k / k².
    let mut term = x;
    let mut sum = 0.0;
    let mut k = 1.0f64;
    loop {
        let add = term / (k * k);
        sum += add;
        if add.abs() <= f64::EPSILON * 0.125 * sum.abs() || k > 200.0 {
            break;
        }
        term *= x;
        k += 1.0;
    }
    sum
}

/// Real dilogarithm on `(-∞, 1]`.
pub fn dilog(xi: f64) -> Result<f64> {
    if !(xi <= 1.0) {
        return Err(Error::domain("dilog", format!("real branch needs xi <= 1, got {xi}")));
    }
    Ok(dilog_real(xi))
}

fn dilog_real(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x == 1.0 {
        PI2_6
    } else if x < -1.0 {
        // Inversion: Li₂(x) = −π²/6 − ½ ln²(−x) − Li₂(1/x).
        let l = (-x).ln();
        -PI2_6 - 0.5 * l * l - dilog_real(1.0 / x)
    } else if x < -0.5 {
        // Landen: Li₂(x) = −Li₂(x/(x−1)) − ½ ln²(1−x), with x/(x−1) ∈ (1/3, 1/2].
        let l = (1.0 - x).ln();
        -series(x / (x - 1.0)) - 0.5 * l * l
    } else if x <= 0.5 {
        series(x)
    } else {
        // Reflection: Li₂(x) = π²/6 − ln x ln(1−x) − Li₂(1−x).
        PI2_6 - x.ln() * (1.0 - x).ln() - series(1.0 - x)
    }
}
