use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::{Frame, NaturalCurvatures, NormalField};
use crate::numerics::{rk4_projected, FnSystem};
use crate::{from_vec3, to_vec3, Vec3};

use super::frenet::{DevelopmentSample, NormalDevelopment};
use super::require_euclid;

/// How the transported field is kept on its constraint set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransportMode {
    /// After each RK4 step, remove the tangential component and rescale to
    /// unit length.
    #[default]
    Stabilized,
    /// Plain RK4 on the transport equation.
    Raw,
}

/// An RM frame `{T, N_1, N_2}` sampled along a curve.
#[derive(Debug, Clone)]
pub struct RmfSolution {
    pub ts: Vec<f64>,
    pub points: Vec<Vec3>,
    pub speeds: Vec<f64>,
    pub tangents: Vec<Vec3>,
    pub n1: Vec<Vec3>,
    /// `T × N_1`.
    pub n2: Vec<Vec3>,
    pub curvatures: NaturalCurvatures,
    pub field: NormalField,
}

impl RmfSolution {
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

    /// `N_2` as a normal field.
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

    pub fn development(&self) -> NormalDevelopment {
        NormalDevelopment {
            samples: self
                .curvatures
                .samples
                .iter()
                .zip(&self.speeds)
                .map(|((t, k), speed)| DevelopmentSample {
                    t: *t,
                    kappa1: k[0],
                    kappa2: k[1],
                    speed: *speed,
                })
                .collect(),
        }
    }

    /// Worst deviation of the frames' Gram matrices from the identity.
    pub fn max_gram_deviation(&self) -> f64 {
        self.frames()
            .iter()
            .map(|f| f.gram_deviation(crate::ManifoldId::Euclid3))
            .fold(0.0, f64::max)
    }
}

/// Unit tangent and its parameter derivative `dT/dt`.
fn tangent_and_rate(curve: &CurveSpec, t: f64) -> (Vec3, Vec3, f64) {
    let d1 = to_vec3(&curve.eval_unchecked(t, 1));
    let d2 = to_vec3(&curve.eval_unchecked(t, 2));
    let speed = d1.norm();
    let tangent = d1 / speed;
    let rate = (d2 - tangent * d2.dot(&tangent)) / speed;
    (tangent, rate, speed)
}

/// A unit vector normal to `tangent`, from the coordinate axis least aligned with it.
pub fn default_normal(tangent: &Vec3) -> Vec3 {
    let t = tangent.normalize();
    let axis = t.iamin();
    let mut e = Vec3::zeros();
    e[axis] = 1.0;
    (e - t * e.dot(&t)).normalize()
}

/// Transports `n0` along the curve as an RM field, integrating
/// `N' = −⟨N, T'⟩ T` with `steps` RK4 steps.
///
/// `n0` is projected onto the normal plane at the start and normalized.
/// The natural curvatures `κ_i = ⟨dT/ds, N_i⟩` are extracted afterwards.
pub fn rmf_transport(
    curve: &CurveSpec,
    n0: &Vec3,
    steps: usize,
    mode: TransportMode,
) -> Result<RmfSolution> {
    require_euclid(curve)?;
    let (a, b) = curve.range();
    let grid = curve.discretize(steps + 1)?;

    let (t0, _, _) = tangent_and_rate(curve, a);
    let start = n0 - t0 * n0.dot(&t0);
    if !(start.norm() > 1e-8 * n0.norm().max(1e-300)) {
        return Err(Error::InvalidInput(
            "initial normal is parallel to the tangent".into(),
        ));
    }
    let start = start.normalize();

    let system = FnSystem::new(3, |t, y: &[f64], dy: &mut [f64]| {
        let (tangent, rate, _) = tangent_and_rate(curve, t);
        let n = Vec3::new(y[0], y[1], y[2]);
        let v = -tangent * n.dot(&rate);
        dy.copy_from_slice(v.as_slice());
    });
    let traj = rk4_projected(&system, start.as_slice(), a, b, steps, |t, y| {
        if mode == TransportMode::Stabilized {
            let (tangent, _, _) = tangent_and_rate(curve, t);
            let mut n = Vec3::new(y[0], y[1], y[2]);
            n -= tangent * n.dot(&tangent);
            n.normalize_mut();
            y.copy_from_slice(n.as_slice());
        }
    })?;

    let count = traj.len();
    let mut sol = RmfSolution {
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
    for (i, (t, y)) in traj.iter().enumerate() {
        let (tangent, rate, speed) = tangent_and_rate(curve, t);
        let n1 = Vec3::new(y[0], y[1], y[2]);
        let n2 = tangent.cross(&n1);
        let curvature = rate / speed;
        sol.points.push(to_vec3(&grid.points[i]));
        sol.speeds.push(speed);
        sol.tangents.push(tangent);
        sol.n1.push(n1);
        sol.n2.push(n2);
        sol.curvatures
            .samples
            .push((t, vec![curvature.dot(&n1), curvature.dot(&n2)]));
        sol.field.samples.push((t, from_vec3(&n1)));
    }
    Ok(sol)
}
