//! Geometric probability: the distribution of an apparent size when the
//! observer is placed at random on the unit circle or sphere.

mod density;
mod moments;
mod montecarlo;

pub use density::{circle_pdf, right_dihedral_pdf, sphere_pdf, Density};
pub use moments::{
    circle_moments_closed, dihedral_atan2_integral, dihedral_m2_pi3, dihedral_moments_quad,
    dihedral_right_moments_closed,
};
pub use montecarlo::{
    mc_circle, mc_dihedral, mc_disk_from_sphere, mc_moments, mc_samples, mc_sphere, McCase,
    MomentReport, RandomStream,
};
