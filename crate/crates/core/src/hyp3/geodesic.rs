use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{rk4, FnSystem};
use crate::Vec3;

use super::metric::{connection, hyp_norm, HypPoint};

/// Shape of a geodesic of the half-space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeodesicKind {
    /// `(x, y, z e^{sign·λ})`.
    Vertical { sign: f64 },
    /// Semicircle orthogonal to `z = 0` in the vertical plane through
    /// `center` with horizontal unit direction `axis`:
    /// `center + radius·tanh(λ + phase)·axis`, height `radius·sech(λ + phase)`.
    Semicircle {
        center: [f64; 2],
        axis: [f64; 2],
        radius: f64,
        phase: f64,
    },
}

/// Unit-speed geodesic `λ ↦ γ_v(λ)` with `γ(0) = base`, `γ'(0) = dir`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicRay {
    pub base: HypPoint,
    pub dir: Vec3,
    pub kind: GeodesicKind,
}

/// Horizontal part below this fraction of the speed makes a ray vertical.
const VERTICAL_EPS: f64 = 1e-14;

impl GeodesicRay {
    /// The geodesic through `base` with direction `v`, normalized in `g`.
    pub fn new(base: HypPoint, v: &Vec3) -> Result<Self> {
        let norm = hyp_norm(&base, v);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidInput(
                "geodesic direction must be non-zero".into(),
            ));
        }
        let dir = v / norm;
        let z0 = base.z;
        let horizontal = dir.x.hypot(dir.y);
        let kind = if horizontal <= VERTICAL_EPS * z0 {
            GeodesicKind::Vertical {
                sign: dir.z.signum(),
            }
        } else {
            let axis = [dir.x / horizontal, dir.y / horizontal];
            let phase = -(dir.z / horizontal).asinh();
            let radius = z0 * phase.cosh();
            let shift = radius * phase.tanh();
            GeodesicKind::Semicircle {
                center: [base.x - shift * axis[0], base.y - shift * axis[1]],
                axis,
                radius,
                phase,
            }
        };
        Ok(GeodesicRay { base, dir, kind })
    }

    /// Point and velocity at `λ`.
    pub fn eval(&self, lambda: f64) -> (Vec3, Vec3) {
        if lambda == 0.0 {
            return (self.base.to_vec3(), self.dir);
        }
        match self.kind {
            GeodesicKind::Vertical { sign } => {
                let z = self.base.z * (sign * lambda).exp();
                (
                    Vec3::new(self.base.x, self.base.y, z),
                    Vec3::new(0.0, 0.0, sign * z),
                )
            }
            GeodesicKind::Semicircle {
                center,
                axis,
                radius,
                phase,
            } => {
                let mu = lambda + phase;
                let sech = 1.0 / mu.cosh();
                let tanh = mu.tanh();
                let w = radius * tanh;
                let point = Vec3::new(
                    center[0] + w * axis[0],
                    center[1] + w * axis[1],
                    radius * sech,
                );
                let dw = radius * sech * sech;
                let velocity = Vec3::new(dw * axis[0], dw * axis[1], -radius * sech * tanh);
                (point, velocity)
            }
        }
    }
}

/// Closed-form geodesic from `p` with initial direction `v` (normalized in
/// `g`), evaluated at arc length `λ`.
pub fn geodesic(p: &HypPoint, v: &Vec3, lambda: f64) -> Result<(Vec3, Vec3)> {
    Ok(GeodesicRay::new(*p, v)?.eval(lambda))
}

/// `exp_p(v)`: the point at distance `‖v‖_g` along the geodesic in the
/// direction of `v`.
pub fn exp_map(p: &HypPoint, v: &Vec3) -> Result<Vec3> {
    let norm = hyp_norm(p, v);
    if norm == 0.0 {
        return Ok(p.to_vec3());
    }
    Ok(geodesic(p, v, norm)?.0)
}

/// Hyperbolic distance `arccosh(1 + |p − q|² / (2 z_p z_q))`.
pub fn hyp_distance(p: &HypPoint, q: &HypPoint) -> f64 {
    let d2 = (p.to_vec3() - q.to_vec3()).norm_squared();
    // arccosh(1 + x) = ln(1 + x + sqrt(x (x + 2))), without cancellation
    let x = d2 / (2.0 * p.z * q.z);
    (x + (x * (x + 2.0)).sqrt()).ln_1p()
}

/// The geodesic equation `ẍ = −Γ(ẋ, ẋ)` integrated with `steps` RK4 steps;
/// an independent check on [`geodesic`].
pub fn geodesic_ode(p: &HypPoint, v: &Vec3, lambda: f64, steps: usize) -> Result<(Vec3, Vec3)> {
    let dir = v / hyp_norm(p, v);
    if lambda == 0.0 {
        return Ok((p.to_vec3(), dir));
    }
    let sign = lambda.signum();
    let system = FnSystem::new(6, |_, y: &[f64], dy: &mut [f64]| {
        let u = Vec3::new(y[3], y[4], y[5]) * sign;
        let acc = -connection(y[2], &u, &u);
        dy[..3].copy_from_slice(u.as_slice());
        dy[3..].copy_from_slice((acc * sign).as_slice());
    });
    let mut y0 = [0.0; 6];
    y0[..3].copy_from_slice(p.to_vec3().as_slice());
    y0[3..].copy_from_slice(dir.as_slice());
    let traj = rk4(&system, &y0, 0.0, lambda.abs(), steps)?;
    let (_, y) = traj.last().unwrap();
    if y[2] <= 0.0 {
        return Err(Error::NotInHalfSpace {
            x: y[0],
            y: y[1],
            z: y[2],
        });
    }
    Ok((Vec3::new(y[0], y[1], y[2]), Vec3::new(y[3], y[4], y[5])))
}
