//! Hyperbolic 3-space in the upper half-space model `z > 0` with metric
//! `g = (dx² + dy² + dz²) / z²`.

mod geodesic;
mod involute;
mod metric;
mod surface;
mod transport;

pub use geodesic::{exp_map, geodesic, geodesic_ode, hyp_distance, GeodesicKind, GeodesicRay};
pub use involute::{evolute_rm_field_hyp, involute_hyp, HypInvolute};
pub use metric::{hyp_christoffel, hyp_metric, hyp_norm, HypPoint};
pub use surface::{
    developability_residual_hyp, mesh_plane_residual_hyp, ruled_surface_hyp,
    tangential_surface_hyp, TangentialSurface,
};
pub use transport::{covariant_along, rm_residual_hyp, rm_transport_hyp, HypRmf};

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::manifold::ManifoldId;

pub(crate) fn require_hyp(curve: &CurveSpec) -> Result<()> {
    if curve.ambient() == ManifoldId::HypHalfSpace3 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "expected a curve in hyp3, got {}",
            curve.ambient().schema_name()
        )))
    }
}
