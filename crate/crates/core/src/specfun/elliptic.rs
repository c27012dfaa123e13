//! Complete elliptic integrals of the first and third kind.
//!
//! Parameter convention: `m` sits under the inner square root,
//!
//! ```text
//! K(m)    = ∫₀¹ dt / (√(1 − t²) √(1 − m t²))
//! Π(n, m) = ∫₀¹ dt / ((1 − n t²) √(1 − t²) √(1 − m t²))
//! ```
//!
//! Both are evaluated through Carlson's symmetric forms using the duplication
//! algorithm:
//!
//! ```text
//! K(m)    = R_F(0, 1 − m, 1)
//! Π(n, m) = K(m) + (n / 3) R_J(0, 1 − m, 1, 1 − n)
//! ```
//!
//! References: B. C. Carlson, "Numerical computation of real or complex
//! elliptic integrals", Numer. Algorithms 10 (1995); DLMF §19.25, §19.36.

use crate::error::{Error, Result};

/// Relative error target of the duplication loops.
const ERRTOL: f64 = f64::EPSILON;

/// Carlson's degenerate integral `R_C(x, y)`; `x ≥ 0`, `y ≠ 0`.
/// For `y < 0` the Cauchy principal value is returned.
pub fn carlson_rc(x: f64, y: f64) -> Result<f64> {
    if !(x >= 0.0 && x.is_finite()) || y == 0.0 || !y.is_finite() {
        return Err(Error::domain(
            "carlson_rc",
            format!("need x >= 0, y != 0; got ({x}, {y})"),
        ));
    }
    if y < 0.0 {
        return Ok((x / (x - y)).sqrt() * rc_positive(x - y, -y));
    }
    Ok(rc_positive(x, y))
}

fn rc_positive(x0: f64, y0: f64) -> f64 {
    let (mut x, mut y) = (x0, y0);
    let a0 = (x0 + 2.0 * y0) / 3.0;
    let mut a = a0;
    let q = (3.0 * ERRTOL).powf(-1.0 / 8.0) * (a0 - x0).abs();
    let mut fourth = 1.0;
    while fourth * q >= a.abs() {
        let lambda = 2.0 * x.sqrt() * y.sqrt() + y;
        a = 0.25 * (a + lambda);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        fourth *= 0.25;
    }
    let s = fourth * (y0 - a0) / a;
    let poly = 1.0
        + s * s
            * (3.0 / 10.0
                + s * (1.0 / 7.0
                    + s * (3.0 / 8.0 + s * (9.0 / 22.0 + s * (159.0 / 208.0 + s * (9.0 / 8.0))))));
    poly / a.sqrt()
}

/// Carlson's symmetric integral of the first kind `R_F(x, y, z)`.
/// Arguments are nonnegative with at most one of them zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64> {
    let ok = |v: f64| v >= 0.0 && v.is_finite();
    if !(ok(x) && ok(y) && ok(z)) {
        return Err(Error::domain(
            "carlson_rf",
            format!("arguments must be finite and nonnegative; got ({x}, {y}, {z})"),
        ));
    }
    let zeros = [x, y, z].iter().filter(|v| **v == 0.0).count();
    if zeros > 1 {
        return Err(Error::domain("carlson_rf", "at most one argument may be zero"));
    }
    Ok(rf_unchecked(x, y, z))
}

fn rf_unchecked(x0: f64, y0: f64, z0: f64) -> f64 {
    let (mut x, mut y, mut z) = (x0, y0, z0);
    let a0 = (x0 + y0 + z0) / 3.0;
    let mut a = a0;
    let q = (3.0 * ERRTOL).powf(-1.0 / 6.0)
        * (a0 - x0).abs().max((a0 - y0).abs()).max((a0 - z0).abs());
    let mut fourth = 1.0;
    while fourth * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        a = 0.25 * (a + lambda);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        fourth *= 0.25;
    }
    let dx = fourth * (a0 - x0) / a;
    let dy = fourth * (a0 - y0) / a;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    let poly = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
    poly / a.sqrt()
}

/// Carlson's symmetric integral of the third kind `R_J(x, y, z, p)`.
///
/// `x, y, z ≥ 0` with at most one zero, `p ≠ 0`. For `p < 0` the Cauchy
/// principal value is returned via the transformation of Carlson (1995,
/// eq. 2.22), which moves the pole to a positive argument.
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> Result<f64> {
    let ok = |v: f64| v >= 0.0 && v.is_finite();
    if !(ok(x) && ok(y) && ok(z)) || p == 0.0 || !p.is_finite() {
        return Err(Error::domain(
            "carlson_rj",
            format!("need x, y, z >= 0 and p != 0; got ({x}, {y}, {z}, {p})"),
        ));
    }
    if [x, y, z].iter().filter(|v| **v == 0.0).count() > 1 {
        return Err(Error::domain("carlson_rj", "at most one of x, y, z may be zero"));
    }
    if p > 0.0 {
        return Ok(rj_positive(x, y, z, p));
    }

    let mut v = [x, y, z];
    v.sort_by(f64::total_cmp);
    let [xt, yt, zt] = v;
    let a = 1.0 / (yt - p);
    let b = a * (zt - yt) * (yt - xt);
    let pt = yt + b;
    let rho = xt * zt / yt;
    let tau = p * pt / yt;
    let rc = carlson_rc(rho, tau)?;
    let rj = rj_positive(xt, yt, zt, pt);
    let rf = rf_unchecked(xt, yt, zt);
    Ok(a * (b * rj + 3.0 * (rc - rf)))
}

fn rj_positive(x0: f64, y0: f64, z0: f64, p0: f64) -> f64 {
    let (mut x, mut y, mut z, mut p) = (x0, y0, z0, p0);
    let a0 = (x0 + y0 + z0 + 2.0 * p0) / 5.0;
    let mut a = a0;
    let delta = (p0 - x0) * (p0 - y0) * (p0 - z0);
    let q = (0.25 * ERRTOL).powf(-1.0 / 6.0)
        * (a0 - x0)
            .abs()
            .max((a0 - y0).abs())
            .max((a0 - z0).abs())
            .max((a0 - p0).abs());
    let mut fourth = 1.0;
    let mut sum = 0.0;
    while fourth * q >= a.abs() {
        let (sx, sy, sz, sp) = (x.sqrt(), y.sqrt(), z.sqrt(), p.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = fourth * fourth * fourth * delta / (d * d);
        sum += fourth / d * rc_positive(1.0, 1.0 + e);
        a = 0.25 * (a + lambda);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        p = 0.25 * (p + lambda);
        fourth *= 0.25;
    }
    let dx = fourth * (a0 - x0) / a;
    let dy = fourth * (a0 - y0) / a;
    let dz = fourth * (a0 - z0) / a;
    let dp = -(dx + dy + dz) / 2.0;
    let e2 = dx * dy + dx * dz + dy * dz - 3.0 * dp * dp;
    let e3 = dx * dy * dz + 2.0 * e2 * dp + 4.0 * dp * dp * dp;
    let e4 = (2.0 * dx * dy * dz + e2 * dp + 3.0 * dp * dp * dp) * dp;
    let e5 = dx * dy * dz * dp * dp;
    let poly = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    fourth * poly / (a * a.sqrt()) + 6.0 * sum
}

fn check_parameter(op: &'static str, m: f64) -> Result<()> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::domain(op, format!("parameter m must lie in [0, 1), got {m}")));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind `K(m)`, `0 ≤ m < 1`.
pub fn ellip_k(m: f64) -> Result<f64> {
    check_parameter("ellip_k", m)?;
    Ok(rf_unchecked(0.0, 1.0 - m, 1.0))
}

/// Complete elliptic integral of the third kind `Π(n, m)`, `n < 1`,
/// `0 ≤ m < 1`.
pub fn ellip_pi(n: f64, m: f64) -> Result<f64> {
    check_parameter("ellip_pi", m)?;
    if !(n < 1.0) {
        return Err(Error::domain("ellip_pi", format!("characteristic n must be < 1, got {n}")));
    }
    let k = rf_unchecked(0.0, 1.0 - m, 1.0);
    if n == 0.0 {
        return Ok(k);
    }
    Ok(k + n / 3.0 * carlson_rj(0.0, 1.0 - m, 1.0, 1.0 - n)?)
}

/// `K` from the complementary parameter `mc = 1 − m ∈ (0, 1]`, for callers
/// that can form `1 − m` without cancellation.
pub(crate) fn ellip_k_complement(mc: f64) -> f64 {
    rf_unchecked(0.0, mc, 1.0)
}

/// `Π(n, m)` given `nc = 1 − n > 0` and `mc = 1 − m ∈ (0, 1]` directly.
pub(crate) fn ellip_pi_complement(n: f64, nc: f64, mc: f64) -> f64 {
    let k = rf_unchecked(0.0, mc, 1.0);
    if n == 0.0 {
        k
    } else {
        k + n / 3.0 * rj_positive(0.0, mc, 1.0, nc)
    }
}
