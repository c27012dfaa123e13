//! Special functions and quadrature shared by the rest of the crate.

pub mod dilog;
pub mod elliptic;
pub mod quad;

pub use dilog::dilog;
pub use elliptic::{carlson_rc, carlson_rf, carlson_rj, ellip_k, ellip_pi};
pub use quad::{integrate, integrate2d, integrate2d_with, integrate_points, Integral, QuadratureSpec};
