//! Apparent-size formulas.
//!
//! Planar angles are in radians and solid angles in steradians. Observer
//! distances are nonnegative; a negative distance is a domain error.

mod dihedral;
mod disk;
mod keyhole;
mod rect;
mod wall;

pub use dihedral::{base_vectors, dihedral_angle, dihedral_closed_form, dihedral_observer, Vec3};
pub use disk::{disk_solid_angle, disk_solid_angle_general, disk_solid_angle_oracle, DiskScene};
pub use keyhole::{keyhole_angle_circle, keyhole_angle_sphere, SpherePoint};
pub use rect::{
    billboard_solid_angle, billboard_solid_angle_dl, rect_solid_angle, rect_solid_angle_oracle,
    RectScene,
};
pub use wall::{wall_angle, wall_optimum, WallScene};

use crate::error::{Error, Result};

pub(crate) fn require_finite(op: &'static str, name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(op, format!("{name} must be finite, got {v}")))
    }
}
