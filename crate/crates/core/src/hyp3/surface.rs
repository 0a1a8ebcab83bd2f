use crate::curve::{uniform_grid, CurveSpec};
use crate::error::{Error, Result};
use crate::field::NormalField;
use crate::mesh::{RulingShape, SurfaceMesh};
use crate::numerics::ResidualReport;
use crate::{to_vec3, Vec3, RATE_FLOOR};

use super::geodesic::GeodesicRay;
use super::metric::HypPoint;
use super::require_hyp;
use super::transport::{covariant_along, g_norm, kinematics};

fn sweep(directrix: &[(f64, Vec3, Vec3)], lambda: (f64, f64), cols: usize) -> Result<SurfaceMesh> {
    if cols < 2 {
        return Err(Error::GridMismatch(
            "need at least two ruling samples".into(),
        ));
    }
    let lambdas = uniform_grid(lambda.0, lambda.1, cols);
    let mut points = Vec::with_capacity(directrix.len() * cols);
    let mut ts = Vec::with_capacity(directrix.len());
    for (t, p, n) in directrix {
        let ray = GeodesicRay::new(HypPoint::from_vec3(p)?, n)?;
        points.extend(lambdas.iter().map(|l| ray.eval(*l).0));
        ts.push(*t);
    }
    SurfaceMesh::new(ts, lambdas, points)
}

/// Mesh of `f(s, λ) = γ_{N(s)}(λ)`, the geodesic from `α(s)` with initial
/// velocity `N(s)`; one row per field sample, `cols` equispaced values of `λ`.
pub fn ruled_surface_hyp(
    curve: &CurveSpec,
    field: &NormalField,
    lambda: (f64, f64),
    cols: usize,
) -> Result<SurfaceMesh> {
    require_hyp(curve)?;
    field.check_on(curve)?;
    let directrix = field
        .samples
        .iter()
        .map(|(t, n)| Ok((*t, to_vec3(&curve.evaluate(*t, 0)?), to_vec3(n))))
        .collect::<Result<Vec<_>>>()?;
    sweep(&directrix, lambda, cols)
}

/// Per-sample `sqrt(det G)` for the `g`-Gram matrix `G` of
/// `{α', N, ∇_{α'}N}`, scaled by `‖α'‖_g ‖N‖_g (‖∇_{α'}N‖_g + ε‖α'‖_g)`.
/// Zero exactly when the three vectors are dependent, i.e. when the ruled
/// surface is developable.
pub fn developability_residual_hyp(
    curve: &CurveSpec,
    field: &NormalField,
) -> Result<ResidualReport> {
    let cov = covariant_along(curve, field)?;
    let mut per_sample = Vec::with_capacity(cov.len());
    for ((t, n), dn) in field.samples.iter().zip(&cov) {
        let z = curve.evaluate(*t, 0)?[2];
        let da = to_vec3(&curve.evaluate(*t, 1)?);
        let n = to_vec3(n);
        // in three dimensions sqrt(det G) is the triple product in g units
        let volume = da.dot(&n.cross(dn)).abs() / z.powi(3);
        let speed = g_norm(z, &da);
        let scale = speed * g_norm(z, &n) * (g_norm(z, dn) + RATE_FLOOR * speed);
        per_sample.push((*t, volume / scale));
    }
    Ok(ResidualReport::from_samples(per_sample))
}

/// The surface swept by the tangent geodesics of a curve.
#[derive(Debug, Clone)]
pub struct TangentialSurface {
    pub mesh: SurfaceMesh,
    /// The directrix is a geodesic, so every ruling lies on the same line.
    pub degenerate: bool,
}

/// `f(s, λ) = γ_{T(s)}(λ)` on `rows` parameters of the curve.
pub fn tangential_surface_hyp(
    curve: &CurveSpec,
    lambda: (f64, f64),
    rows: usize,
    cols: usize,
) -> Result<TangentialSurface> {
    require_hyp(curve)?;
    let mut directrix = Vec::with_capacity(rows);
    let mut max_curvature = 0.0_f64;
    for t in curve.grid(rows) {
        curve.evaluate(t, 1)?;
        let k = kinematics(curve, t);
        if !(k.speed > curve.eps_reg()) {
            return Err(Error::DegenerateCurve { t, speed: k.speed });
        }
        max_curvature = max_curvature.max(g_norm(k.point.z, &k.tangent_rate) / k.speed);
        directrix.push((t, k.point, k.tangent));
    }
    let mesh = sweep(&directrix, lambda, cols)?;
    Ok(TangentialSurface {
        mesh,
        degenerate: max_curvature <= curve.eps_reg().max(1e-10),
    })
}

/// Mesh check for a half-space ruled surface: along a ruling of a
/// developable surface the tangent plane stays on one totally geodesic
/// plane (a hemisphere orthogonal to `z = 0` or a vertical plane). Each
/// point contributes the sine of the angle between `∂_s f` and that plane.
pub fn mesh_plane_residual_hyp(mesh: &SurfaceMesh) -> Result<ResidualReport> {
    mesh.ruling_plane_residual(RulingShape::Circular, |q0, n0, q| {
        if n0.z.abs() < 1e-12 {
            n0
        } else {
            // hemisphere centred on z = 0 through q0 with normal n0 there
            let center = q0 - n0 * (q0.z / n0.z);
            (q - center).normalize()
        }
    })
}
