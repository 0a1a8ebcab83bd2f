use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::NormalField;
use crate::numerics::{finite_diff, rk4, FnSystem, ResidualReport};
use crate::{from_vec3, to_vec3, Vec3};

use super::geodesic::GeodesicRay;
use super::metric::HypPoint;
use super::require_hyp;
use super::transport::{g, g_norm, kinematics, rm_residual_hyp};

/// Below this `g`-speed everywhere, the involute collapses to a point.
const DEGENERATE_SPEED: f64 = 1e-7;

/// An involute `β(s) = γ_{T(s)}(λ(s))` of a unit-speed curve.
#[derive(Debug, Clone)]
pub struct HypInvolute {
    pub curve: CurveSpec,
    /// `(s, λ(s))`.
    pub lambda: Vec<(f64, f64)>,
    /// Velocity `∂_λ F(s, λ(s))` of the tangent geodesic at `β(s)`.
    pub rulings: Vec<Vec3>,
    /// `β' ≡ 0` on the window (the curve is a geodesic).
    pub degenerate: bool,
    /// Per-sample `|g(β', ∂_λF)| / ‖β'‖_g`, with `β'` from finite differences
    /// of the samples. Unnormalized when `degenerate`.
    pub orthogonality: ResidualReport,
}

/// `F(s, λ)`: the point at distance `λ` along the tangent geodesic at `α(s)`.
fn tangent_geodesic(curve: &CurveSpec, s: f64, lambda: f64) -> Result<(Vec3, Vec3)> {
    let k = kinematics(curve, s);
    Ok(GeodesicRay::new(HypPoint::from_vec3(&k.point)?, &k.tangent)?.eval(lambda))
}

/// `∂_s F(s, λ)` by a fourth-order central difference.
fn tangent_geodesic_rate(curve: &CurveSpec, s: f64, lambda: f64) -> Result<Vec3> {
    let h = 1e-3 * s.abs().max(1.0);
    let f = |x: f64| tangent_geodesic(curve, x, lambda).map(|(p, _)| p);
    Ok((f(s - 2.0 * h)? - f(s + 2.0 * h)? + (f(s + h)? - f(s - h)?) * 8.0) / (12.0 * h))
}

/// Involute of a unit-speed curve meeting every tangent geodesic
/// orthogonally. `λ(s)` solves `λ' = −g(∂_s F, ∂_λ F)` with RK4 from
/// `λ(s_0) = c − s_0`.
pub fn involute_hyp(alpha: &CurveSpec, c: f64, steps: usize) -> Result<HypInvolute> {
    require_hyp(alpha)?;
    let (a, b) = alpha.range();
    if c >= a && c <= b {
        return Err(Error::CuspOnWindow { s: c });
    }
    let mut deviation = 0.0_f64;
    for s in alpha.grid(steps + 1) {
        deviation = deviation.max((alpha.speed(s)? - 1.0).abs());
    }
    if deviation > 1e-6 {
        return Err(Error::NotUnitSpeed { deviation });
    }

    let failure = std::cell::Cell::new(None);
    let rate = |s: f64, lambda: f64| -> Result<f64> {
        let (p, v) = tangent_geodesic(alpha, s, lambda)?;
        Ok(-g(p.z, &tangent_geodesic_rate(alpha, s, lambda)?, &v))
    };
    let system = FnSystem::new(1, |s, y: &[f64], dy: &mut [f64]| {
        dy[0] = rate(s, y[0]).unwrap_or_else(|e| {
            failure.set(Some(e));
            f64::NAN
        });
    });
    let traj = rk4(&system, &[c - a], a, b, steps);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let traj = traj?;

    let mut lambda = Vec::with_capacity(traj.len());
    let mut points = Vec::with_capacity(traj.len());
    let mut rulings = Vec::with_capacity(traj.len());
    let mut speeds = Vec::with_capacity(traj.len());
    for (s, y) in traj.iter() {
        let l = y[0];
        if l == 0.0 || l.signum() != (c - a).signum() {
            return Err(Error::CuspOnWindow { s });
        }
        let (p, v) = tangent_geodesic(alpha, s, l)?;
        let velocity = tangent_geodesic_rate(alpha, s, l)? + v * rate(s, l)?;
        speeds.push((s, g_norm(p.z, &velocity)));
        lambda.push((s, l));
        points.push(from_vec3(&p));
        rulings.push(v);
    }
    let degenerate = speeds.iter().all(|(_, v)| *v <= DEGENERATE_SPEED);
    if !degenerate {
        if let Some((s, _)) = speeds.iter().find(|(_, v)| *v < alpha.eps_reg()) {
            return Err(Error::CuspOnWindow { s: *s });
        }
    }

    let ts = traj.ts.clone();
    let d1 = finite_diff(&ts, &points, 1)?;
    let per_sample = ts
        .iter()
        .zip(d1.iter().zip(points.iter().zip(&rulings)))
        .map(|(s, (d, (p, v)))| {
            let (d, z) = (to_vec3(d), p[2]);
            let dot = g(z, &d, v).abs();
            (*s, if degenerate { dot } else { dot / g_norm(z, &d) })
        })
        .collect();
    let curve = CurveSpec::sampled(alpha.ambient(), ts, points)?.with_eps_reg(alpha.eps_reg());
    Ok(HypInvolute {
        curve,
        lambda,
        rulings,
        degenerate,
        orthogonality: ResidualReport::from_samples(per_sample),
    })
}

/// The velocity field of the tangent geodesics along the involute,
/// `N(s) = ∂_λ F(s, λ(s))`, with its RM residual along `β`.
pub fn evolute_rm_field_hyp(involute: &HypInvolute) -> Result<(NormalField, ResidualReport)> {
    if involute.degenerate {
        return Err(Error::DegenerateCurve {
            t: involute.lambda[0].0,
            speed: 0.0,
        });
    }
    let samples = involute
        .lambda
        .iter()
        .zip(&involute.rulings)
        .map(|((s, _), v)| (*s, from_vec3(v)))
        .collect();
    let field = NormalField::new(involute.curve.clone(), samples)?;
    let report = rm_residual_hyp(&involute.curve, &field)?;
    Ok((field, report))
}
