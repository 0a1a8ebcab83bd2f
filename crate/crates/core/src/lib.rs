//! Rotation-minimizing (RM) vector fields and frames along curves.
//!
//! Three ambient geometries are supported:
//!
//! * [`euclid3`]: Euclidean 3-space. RM transport, natural curvatures, the
//!   normal development, developable ruled surfaces, involutes/evolutes and
//!   the spherical-curve test.
//! * [`hyp3`]: hyperbolic 3-space in the upper half-space model. Closed-form
//!   geodesics, covariant derivatives along curves, RM transport, ruled and
//!   tangential surfaces, involutes.
//! * [`kaehler`]: flat complex space `C^n` with its complex structure `J`.
//!   The RM test for `J(γ')`, magnetic trajectories, circle fits.
//!
//! Curves are described by [`CurveSpec`], which is either an analytic family
//! (exact derivatives) or a list of samples (finite-difference derivatives).

// `!(x > eps)` deliberately rejects NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
pub mod error;
pub mod euclid3;
pub mod field;
pub mod hyp3;
pub mod json;
pub mod kaehler;
pub mod manifold;
pub mod mesh;
pub mod numerics;

pub use curve::{CurveKind, CurveSpec, Family, Samples};
pub use error::{Error, Result};
pub use field::{Frame, NaturalCurvatures, NormalField};
pub use manifold::ManifoldId;
pub use mesh::SurfaceMesh;
pub use numerics::ResidualReport;

pub type Vector = nalgebra::DVector<f64>;
pub type Vec3 = nalgebra::Vector3<f64>;

/// Numeric tolerances shared by the geometry kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Deviation allowed in Gram matrices of frames.
    pub orth: f64,
    /// Minimum speed (and curvature) treated as non-zero.
    pub reg: f64,
    /// Threshold on residual reports for pass/fail verdicts.
    pub residual: f64,
    /// Threshold on the dimensionless `J(γ')` residual.
    pub rm_j: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            orth: 1e-8,
            reg: 1e-9,
            residual: 1e-6,
            rm_j: 1e-5,
        }
    }
}

/// Below this fraction of `‖α'‖`, a field derivative is treated as zero when
/// normalizing developability residuals.
pub(crate) const RATE_FLOOR: f64 = 1e-2;

pub(crate) fn to_vec3(v: &Vector) -> Vec3 {
    Vec3::new(v[0], v[1], v[2])
}

pub(crate) fn from_vec3(v: &Vec3) -> Vector {
    Vector::from_column_slice(v.as_slice())
}
