//! Flat Kähler space `C^n = R^{2n}` with its complex structure `J`:
//! the RM test for `J(γ')`, magnetic trajectories and circle fits.

mod magnetic;
mod planar;
mod structure;

pub use magnetic::{circle_params, magnetic_integrate, CircleFit, MagneticField};
pub use planar::{
    analytic_planar_test, constant_speed_check, rm_j_test, PlanarReport, RmJReport, SpeedReport,
};
pub use structure::{apply_j, ComplexStructure};
