use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::{Frame, NaturalCurvatures, NormalField};
use crate::numerics::{finite_diff, rk4_projected, FnSystem, ResidualReport};
use crate::{from_vec3, to_vec3, ManifoldId, Vec3};

use super::metric::connection;
use super::require_hyp;

/// `g`-inner product at a point with height `z`.
pub(crate) fn g(z: f64, u: &Vec3, v: &Vec3) -> f64 {
    u.dot(v) / (z * z)
}

pub(crate) fn g_norm(z: f64, u: &Vec3) -> f64 {
    u.norm() / z
}

/// Position, `g`-unit tangent, `g`-speed and `∇_{α'}T` at `t`.
pub(crate) struct Kinematics {
    pub point: Vec3,
    pub tangent: Vec3,
    pub speed: f64,
    pub tangent_rate: Vec3,
}

pub(crate) fn kinematics(curve: &CurveSpec, t: f64) -> Kinematics {
    let point = to_vec3(&curve.eval_unchecked(t, 0));
    let d1 = to_vec3(&curve.eval_unchecked(t, 1));
    let d2 = to_vec3(&curve.eval_unchecked(t, 2));
    let z = point.z;
    let speed = g_norm(z, &d1);
    let tangent = d1 / speed;
    // ∇_{α'}α' = α'' + Γ(α', α'); its tangential part drops out of ∇_{α'}T
    let acc = d2 + connection(z, &d1, &d1);
    let tangent_rate = (acc - tangent * g(z, &acc, &tangent)) / speed;
    Kinematics {
        point,
        tangent,
        speed,
        tangent_rate,
    }
}

/// `∇_{α'}N = N' + Γ(α', N)` at every sample of `field`, with `N'` from
/// finite differences over the samples.
pub fn covariant_along(curve: &CurveSpec, field: &NormalField) -> Result<Vec<Vec3>> {
    require_hyp(curve)?;
    field.check_on(curve)?;
    let dn = finite_diff(&field.ts(), &field.vectors(), 1)?;
    field
        .samples
        .iter()
        .zip(dn)
        .map(|((t, n), dn)| {
            let p = to_vec3(&curve.evaluate(*t, 0)?);
            let d1 = to_vec3(&curve.evaluate(*t, 1)?);
            Ok(to_vec3(&dn) + connection(p.z, &d1, &to_vec3(n)))
        })
        .collect()
}

/// Per-sample `‖(∇_{α'}N)^⊥‖_g / ‖α'‖_g`: the rotation rate of the field in
/// the normal bundle per unit arc length, `⊥` taken against `α'` in `g`.
pub fn rm_residual_hyp(curve: &CurveSpec, field: &NormalField) -> Result<ResidualReport> {
    let cov = covariant_along(curve, field)?;
    let mut per_sample = Vec::with_capacity(cov.len());
    for ((t, _), dn) in field.samples.iter().zip(&cov) {
        let p = to_vec3(&curve.evaluate(*t, 0)?);
        let d1 = to_vec3(&curve.evaluate(*t, 1)?);
        let speed = g_norm(p.z, &d1);
        let tangent = d1 / speed;
        let normal_part = dn - tangent * g(p.z, dn, &tangent);
        per_sample.push((*t, g_norm(p.z, &normal_part) / speed));
    }
    Ok(ResidualReport::from_samples(per_sample))
}

/// An RM frame `{T, N_1, N_2}` along a curve of the half-space, each vector
/// of unit `g`-length.
#[derive(Debug, Clone)]
pub struct HypRmf {
    pub ts: Vec<f64>,
    pub points: Vec<Vec3>,
    pub speeds: Vec<f64>,
    pub tangents: Vec<Vec3>,
    pub n1: Vec<Vec3>,
    pub n2: Vec<Vec3>,
    pub curvatures: NaturalCurvatures,
    pub field: NormalField,
}

impl HypRmf {
    pub fn frames(&self) -> Vec<Frame> {
        (0..self.ts.len())
            .map(|i| Frame {
                point: from_vec3(&self.points[i]),
                vectors: vec![
                    from_vec3(&self.tangents[i]),
                    from_vec3(&self.n1[i]),
                    from_vec3(&self.n2[i]),
                ],
            })
            .collect()
    }

    pub fn second_field(&self) -> NormalField {
        NormalField {
            curve: self.field.curve.clone(),
            samples: self
                .ts
                .iter()
                .zip(&self.n2)
                .map(|(t, v)| (*t, from_vec3(v)))
                .collect(),
        }
    }

    /// Worst deviation of the frames' `g`-Gram matrices from the identity.
    pub fn max_gram_deviation(&self) -> f64 {
        self.frames()
            .iter()
            .map(|f| f.gram_deviation(ManifoldId::HypHalfSpace3))
            .fold(0.0, f64::max)
    }
}

/// Transports `n0` as an RM field, integrating
/// `N' = −Γ(α', N) − g(∇_{α'}T, N) T` with `steps` RK4 steps. After each
/// step `N` is made `g`-normal to the curve and `g`-unit again.
///
/// `N_2` completes a positive `g`-orthonormal frame, and
/// `κ_i = g(∇_T T, N_i)`.
pub fn rm_transport_hyp(curve: &CurveSpec, n0: &Vec3, steps: usize) -> Result<HypRmf> {
    require_hyp(curve)?;
    let (a, b) = curve.range();
    curve.evaluate(a, 1)?;
    let k0 = kinematics(curve, a);
    let start = n0 - k0.tangent * g(k0.point.z, n0, &k0.tangent);
    if !(g_norm(k0.point.z, &start) > 1e-8 * g_norm(k0.point.z, n0).max(1e-300)) {
        return Err(Error::InvalidInput(
            "initial normal is parallel to the tangent".into(),
        ));
    }
    let start = start / g_norm(k0.point.z, &start);

    let system = FnSystem::new(3, |t, y: &[f64], dy: &mut [f64]| {
        let k = kinematics(curve, t);
        let d1 = k.tangent * k.speed;
        let n = Vec3::new(y[0], y[1], y[2]);
        let v = -connection(k.point.z, &d1, &n) - k.tangent * g(k.point.z, &k.tangent_rate, &n);
        dy.copy_from_slice(v.as_slice());
    });
    let traj = rk4_projected(&system, start.as_slice(), a, b, steps, |t, y| {
        let k = kinematics(curve, t);
        let mut n = Vec3::new(y[0], y[1], y[2]);
        n -= k.tangent * g(k.point.z, &n, &k.tangent);
        n /= g_norm(k.point.z, &n);
        y.copy_from_slice(n.as_slice());
    })?;

    let count = traj.len();
    let mut sol = HypRmf {
        ts: traj.ts.clone(),
        points: Vec::with_capacity(count),
        speeds: Vec::with_capacity(count),
        tangents: Vec::with_capacity(count),
        n1: Vec::with_capacity(count),
        n2: Vec::with_capacity(count),
        curvatures: NaturalCurvatures {
            samples: Vec::with_capacity(count),
        },
        field: NormalField {
            curve: curve.clone(),
            samples: Vec::with_capacity(count),
        },
    };
    for (t, y) in traj.iter() {
        let k = kinematics(curve, t);
        if !(k.speed > curve.eps_reg()) {
            return Err(Error::DegenerateCurve { t, speed: k.speed });
        }
        let z = k.point.z;
        let n1 = Vec3::new(y[0], y[1], y[2]);
        // Euclidean unit vectors scaled by z are g-unit; the metric is conformal
        let n2 = (k.tangent / z).cross(&(n1 / z)) * z;
        let curvature = k.tangent_rate / k.speed;
        sol.curvatures
            .samples
            .push((t, vec![g(z, &curvature, &n1), g(z, &curvature, &n2)]));
        sol.points.push(k.point);
        sol.speeds.push(k.speed);
        sol.tangents.push(k.tangent);
        sol.n1.push(n1);
        sol.n2.push(n2);
        sol.field.samples.push((t, from_vec3(&n1)));
    }
    Ok(sol)
}
