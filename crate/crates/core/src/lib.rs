//! Apparent size of objects seen from an observer's eye.
//!
//! The crate covers planar subtended angles (a segment on a wall, a keyhole
//! segment seen from a circle or sphere), solid angles (an off-axis disk via
//! complete elliptic integrals, a rectangle via four arctangents), the
//! apparent magnitude of a plane angle seen from the unit sphere, and the
//! image-plane areas produced by one- and two-point linear perspective.
//!
//! Modules:
//! - [`specfun`]: Carlson elliptic integrals, the real dilogarithm and
//!   adaptive Gauss–Kronrod quadrature.
//! - [`subtense`]: the apparent-size formulas and their brute-force oracles.
//! - [`optimize`]: bounded scalar maximization, bracketing root finding and
//!   the viewing-distance / aspect-ratio problems built on them.
//! - [`geomprob`]: densities, moments and seeded Monte Carlo estimators.
//! - [`perspective`]: projection maps, shoelace areas and strip-cell areas.
//! - [`cli`]: the `subtense` command-line front end.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod geomprob;
pub mod optimize;
pub mod perspective;
pub mod specfun;
pub mod subtense;

pub use error::{Error, Result};
