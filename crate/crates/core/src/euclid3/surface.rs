use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::NormalField;
use crate::mesh::{RulingShape, SurfaceMesh};
use crate::numerics::{finite_diff, ResidualReport};
use crate::{curve::uniform_grid, to_vec3, Vec3, RATE_FLOOR};

use super::require_euclid;

/// Mesh of `f(s, λ) = α(s) + λ N(s)`, one row per field sample and `cols`
/// equispaced values of `λ`.
pub fn ruled_surface(
    curve: &CurveSpec,
    field: &NormalField,
    lambda: (f64, f64),
    cols: usize,
) -> Result<SurfaceMesh> {
    require_euclid(curve)?;
    field.check_on(curve)?;
    if cols < 2 {
        return Err(Error::GridMismatch(
            "need at least two ruling samples".into(),
        ));
    }
    let lambdas = uniform_grid(lambda.0, lambda.1, cols);
    let mut points = Vec::with_capacity(field.len() * cols);
    for (t, n) in &field.samples {
        let p = to_vec3(&curve.evaluate(*t, 0)?);
        let n = to_vec3(n);
        points.extend(lambdas.iter().map(|l| p + n * *l));
    }
    SurfaceMesh::new(field.ts(), lambdas, points)
}

fn field_derivative(field: &NormalField) -> Result<Vec<Vec3>> {
    let d = finite_diff(&field.ts(), &field.vectors(), 1)?;
    Ok(d.iter().map(to_vec3).collect())
}

/// Per-sample `|det[α', N, N']|`, scaled by `‖α'‖ ‖N‖ (‖N'‖ + ε‖α'‖)` to be
/// dimensionless. Zero exactly when the ruled surface is developable.
pub fn developability_residual(curve: &CurveSpec, field: &NormalField) -> Result<ResidualReport> {
    require_euclid(curve)?;
    field.check_on(curve)?;
    let dn = field_derivative(field)?;
    let mut per_sample = Vec::with_capacity(field.len());
    for ((t, n), dn) in field.samples.iter().zip(dn) {
        let da = to_vec3(&curve.evaluate(*t, 1)?);
        let n = to_vec3(n);
        let det = da.dot(&n.cross(&dn));
        let scale = da.norm() * n.norm() * (dn.norm() + RATE_FLOOR * da.norm());
        per_sample.push((*t, det.abs() / scale));
    }
    Ok(ResidualReport::from_samples(per_sample))
}

/// Per-sample `‖N' − ⟨N', T⟩T‖ / ‖α'‖`: the rotation rate of the field in
/// the normal plane per unit arc length. Zero for RM fields.
pub fn rm_residual(curve: &CurveSpec, field: &NormalField) -> Result<ResidualReport> {
    require_euclid(curve)?;
    field.check_on(curve)?;
    let dn = field_derivative(field)?;
    let mut per_sample = Vec::with_capacity(field.len());
    for ((t, _), dn) in field.samples.iter().zip(dn) {
        let da = to_vec3(&curve.evaluate(*t, 1)?);
        let speed = da.norm();
        let tangent = da / speed;
        let normal_part = dn - tangent * dn.dot(&tangent);
        per_sample.push((*t, normal_part.norm() / speed));
    }
    Ok(ResidualReport::from_samples(per_sample))
}

/// Checks a ruled mesh directly: along each ruling the tangent plane of a
/// developable surface is fixed. The plane of each row is taken at the column
/// farthest from the directrix. See [`SurfaceMesh::ruling_plane_residual`].
pub fn mesh_plane_residual(mesh: &SurfaceMesh) -> Result<ResidualReport> {
    mesh.ruling_plane_residual(RulingShape::Straight, |_, normal, _| normal)
}
