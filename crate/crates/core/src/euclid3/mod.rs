//! Rotation-minimizing frames and their applications in Euclidean 3-space.

mod frenet;
mod involute;
mod spherical;
mod surface;
mod transport;

pub use frenet::{
    frenet, frenet_from_natural, natural_from_frenet, CurvatureTorsion, DevelopmentSample,
    FrenetApparatus, FrenetSample, NormalDevelopment,
};
pub use involute::{evolute_normal_field, involute, Involute};
pub use spherical::{fit_line, spherical_test, LineFit, SphericalReport, SphericalVerdict};
pub use surface::{developability_residual, mesh_plane_residual, rm_residual, ruled_surface};
pub use transport::{default_normal, rmf_transport, RmfSolution, TransportMode};

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::manifold::ManifoldId;

pub(crate) fn require_euclid(curve: &CurveSpec) -> Result<()> {
    if curve.ambient() == ManifoldId::Euclid3 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "expected a curve in euclid3, got {}",
            curve.ambient().schema_name()
        )))
    }
}
