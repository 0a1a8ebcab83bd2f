//! Curve sources: analytic families with closed-form derivatives, and
//! sampled polylines differentiated numerically.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifold::ManifoldId;
use crate::numerics::{finite_diff, fornberg_weights, integrate, is_uniform, lagrange_eval};
use crate::Vector;

fn one() -> f64 {
    1.0
}

/// Built-in analytic curve families.
///
/// Planar families (`circle`, `ellipse`) live in the span of the first two
/// coordinates and take their ambient dimension from `center`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum Family {
    /// `point + t·direction`
    Line {
        point: Vec<f64>,
        direction: Vec<f64>,
    },
    /// `center + radius·(cos ωt, sin ωt, 0, …)`
    Circle {
        center: Vec<f64>,
        radius: f64,
        #[serde(default = "one")]
        omega: f64,
    },
    /// `center + (a cos t, b sin t, 0, …)`
    Ellipse { center: Vec<f64>, a: f64, b: f64 },
    /// `(a cos t, a sin t, z0 + b t)`
    Helix {
        a: f64,
        b: f64,
        #[serde(default)]
        z0: f64,
    },
    /// Curve on the sphere of the given radius about the origin, with
    /// longitude `t` and latitude `amplitude·sin(frequency·t)`.
    Spherical {
        radius: f64,
        amplitude: f64,
        frequency: f64,
    },
    /// Unit-speed logarithmic spiral
    /// `r(s)(cos log r(s), sin log r(s))`, `r(s) = 1 + s/√2`.
    LogSpiralNatural {},
    /// `(e^t cos t, e^t sin t)`.
    LogSpiral {},
    /// Unit-speed vertical geodesic `(x, y, z0·e^t)` of the half-space.
    VerticalRay { x: f64, y: f64, z0: f64 },
    /// Unit-speed semicircular geodesic of the half-space:
    /// `(c + radius·tanh t·u, radius·sech t)` with `u = (cos angle, sin angle)`.
    Semicircle {
        cx: f64,
        cy: f64,
        angle: f64,
        radius: f64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Line { .. } => "line",
            Family::Circle { .. } => "circle",
            Family::Ellipse { .. } => "ellipse",
            Family::Helix { .. } => "helix",
            Family::Spherical { .. } => "spherical",
            Family::LogSpiralNatural {} => "log_spiral_natural",
            Family::LogSpiral {} => "log_spiral",
            Family::VerticalRay { .. } => "vertical_ray",
            Family::Semicircle { .. } => "semicircle",
        }
    }

    /// Coordinate dimension of the points produced by the family.
    pub fn dim(&self) -> usize {
        match self {
            Family::Line { point, .. } => point.len(),
            Family::Circle { center, .. } | Family::Ellipse { center, .. } => center.len(),
            Family::LogSpiralNatural {} | Family::LogSpiral {} => 2,
            _ => 3,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(format!("{}: {m}", self.name())));
        match self {
            Family::Line { point, direction } => {
                if point.len() != direction.len() || point.is_empty() {
                    return bad("point and direction must have equal, non-zero length");
                }
            }
            Family::Circle {
                center,
                radius,
                omega,
            } => {
                if center.len() < 2 || *radius <= 0.0 || *omega == 0.0 {
                    return bad("needs a center of dimension >= 2, radius > 0, omega != 0");
                }
            }
            Family::Ellipse { center, a, b } => {
                if center.len() < 2 || *a <= 0.0 || *b <= 0.0 {
                    return bad("needs a center of dimension >= 2 and positive semi-axes");
                }
            }
            Family::Spherical { radius, .. } => {
                if *radius <= 0.0 {
                    return bad("radius must be positive");
                }
            }
            Family::VerticalRay { z0, .. } => {
                if *z0 <= 0.0 {
                    return bad("z0 must be positive");
                }
            }
            Family::Semicircle { radius, .. } => {
                if *radius <= 0.0 {
                    return bad("radius must be positive");
                }
            }
            Family::Helix { .. } | Family::LogSpiralNatural {} | Family::LogSpiral {} => {}
        }
        Ok(())
    }

    /// Closed-form `γ`, `γ'` or `γ''` at `t` (orders 0, 1, 2).
    pub fn eval(&self, t: f64, order: u8) -> Vector {
        let mut out = Vector::zeros(self.dim());
        match self {
            Family::Line { point, direction } => {
                for i in 0..point.len() {
                    out[i] = match order {
                        0 => point[i] + t * direction[i],
                        1 => direction[i],
                        _ => 0.0,
                    };
                }
            }
            Family::Circle {
                center,
                radius,
                omega,
            } => {
                let (s, c) = (omega * t).sin_cos();
                let (x, y) = match order {
                    0 => (c, s),
                    1 => (-omega * s, omega * c),
                    _ => (-omega * omega * c, -omega * omega * s),
                };
                out[0] = radius * x;
                out[1] = radius * y;
                if order == 0 {
                    for (o, c) in out.iter_mut().zip(center) {
                        *o += c;
                    }
                }
            }
            Family::Ellipse { center, a, b } => {
                let (s, c) = t.sin_cos();
                let (x, y) = match order {
                    0 => (c, s),
                    1 => (-s, c),
                    _ => (-c, -s),
                };
                out[0] = a * x;
                out[1] = b * y;
                if order == 0 {
                    for (o, c) in out.iter_mut().zip(center) {
                        *o += c;
                    }
                }
            }
            Family::Helix { a, b, z0 } => {
                let (s, c) = t.sin_cos();
                let v = match order {
                    0 => [a * c, a * s, z0 + b * t],
                    1 => [-a * s, a * c, *b],
                    _ => [-a * c, -a * s, 0.0],
                };
                out.copy_from_slice(&v);
            }
            Family::Spherical {
                radius,
                amplitude,
                frequency,
            } => {
                let phi = amplitude * (frequency * t).sin();
                let dphi = amplitude * frequency * (frequency * t).cos();
                let ddphi = -amplitude * frequency * frequency * (frequency * t).sin();
                let (sp, cp) = phi.sin_cos();
                let (st, ct) = t.sin_cos();
                let v = match order {
                    0 => [cp * ct, cp * st, sp],
                    1 => [
                        -sp * dphi * ct - cp * st,
                        -sp * dphi * st + cp * ct,
                        cp * dphi,
                    ],
                    _ => {
                        let radial = cp * dphi * dphi + sp * ddphi;
                        [
                            -radial * ct + 2.0 * sp * dphi * st - cp * ct,
                            -radial * st - 2.0 * sp * dphi * ct - cp * st,
                            -sp * dphi * dphi + cp * ddphi,
                        ]
                    }
                };
                for (o, x) in out.iter_mut().zip(v) {
                    *o = radius * x;
                }
            }
            Family::LogSpiralNatural {} => {
                let k = 1.0 / SQRT_2;
                let r = 1.0 + k * t;
                let (s, c) = r.ln().sin_cos();
                let v = match order {
                    0 => [r * c, r * s],
                    1 => [k * (c - s), k * (s + c)],
                    _ => {
                        let f = k * k / r;
                        [f * (-s - c), f * (c - s)]
                    }
                };
                out.copy_from_slice(&v);
            }
            Family::LogSpiral {} => {
                let e = t.exp();
                let (s, c) = t.sin_cos();
                let v = match order {
                    0 => [e * c, e * s],
                    1 => [e * (c - s), e * (s + c)],
                    _ => [-2.0 * e * s, 2.0 * e * c],
                };
                out.copy_from_slice(&v);
            }
            Family::VerticalRay { x, y, z0 } => {
                let z = z0 * t.exp();
                let v = if order == 0 {
                    [*x, *y, z]
                } else {
                    [0.0, 0.0, z]
                };
                out.copy_from_slice(&v);
            }
            Family::Semicircle {
                cx,
                cy,
                angle,
                radius,
            } => {
                let (uy, ux) = angle.sin_cos();
                let th = t.tanh();
                let sh = 1.0 / t.cosh();
                let (w, z) = match order {
                    0 => (th, sh),
                    1 => (sh * sh, -sh * th),
                    _ => (-2.0 * sh * sh * th, -sh * (sh * sh - th * th)),
                };
                let v = if order == 0 {
                    [cx + radius * w * ux, cy + radius * w * uy, radius * z]
                } else {
                    [radius * w * ux, radius * w * uy, radius * z]
                };
                out.copy_from_slice(&v);
            }
        }
        out
    }
}

/// Sample storage for a polyline curve, with derivatives precomputed by
/// finite differences.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    pub ts: Vec<f64>,
    pub points: Vec<Vector>,
    d1: Vec<Vector>,
    d2: Vec<Vector>,
}

impl Samples {
    fn new(ts: Vec<f64>, points: Vec<Vector>) -> Result<Self> {
        if ts.len() != points.len() {
            return Err(Error::GridMismatch(format!(
                "{} parameters for {} points",
                ts.len(),
                points.len()
            )));
        }
        if ts.len() < 4 {
            return Err(Error::TooFewSamples {
                needed: 4,
                got: ts.len(),
            });
        }
        let d1 = finite_diff(&ts, &points, 1)?;
        let d2 = if ts.len() >= 5 {
            finite_diff(&ts, &points, 2)?
        } else {
            ts.iter()
                .map(|&t| {
                    let w = fornberg_weights(t, &ts, 2);
                    let mut d = Vector::zeros(points[0].len());
                    for (wk, p) in w.iter().zip(&points) {
                        d.axpy(*wk, p, 1.0);
                    }
                    d
                })
                .collect()
        };
        Ok(Samples { ts, points, d1, d2 })
    }

    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    fn eval(&self, t: f64, order: u8) -> Vector {
        let data = match order {
            0 => &self.points,
            1 => &self.d1,
            _ => &self.d2,
        };
        lagrange_eval(&self.ts, data, t)
    }

    fn third(&self, t: f64) -> Result<Vector> {
        let d3 = finite_diff(&self.ts, &self.d2, 1)?;
        Ok(lagrange_eval(&self.ts, &d3, t))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    /// Closed-form family, evaluated as `γ(time_scale · t)`.
    Analytic {
        family: Family,
        time_scale: f64,
    },
    Sampled(Samples),
}

/// A curve in one of the supported ambient spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    kind: CurveKind,
    ambient: ManifoldId,
    range: (f64, f64),
    eps_reg: f64,
}

/// A curve evaluated on a parameter grid.
#[derive(Debug, Clone)]
pub struct Discretized {
    pub ts: Vec<f64>,
    pub points: Vec<Vector>,
    pub d1: Vec<Vector>,
    pub d2: Vec<Vector>,
}

/// `count` equispaced parameters covering `[a, b]`, endpoints exact.
pub fn uniform_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    let h = (b - a) / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { b } else { a + i as f64 * h })
        .collect()
}

impl CurveSpec {
    pub const DEFAULT_EPS_REG: f64 = 1e-9;

    pub fn analytic(ambient: ManifoldId, family: Family, range: (f64, f64)) -> Result<Self> {
        ambient.validate()?;
        family.validate()?;
        if family.dim() != ambient.dim() {
            return Err(Error::DimensionMismatch {
                expected: ambient.dim(),
                got: family.dim(),
            });
        }
        check_range(range)?;
        if matches!(family, Family::LogSpiralNatural {}) && range.0 <= -SQRT_2 {
            return Err(Error::InvalidInput(
                "log_spiral_natural is defined for s > -sqrt(2)".into(),
            ));
        }
        let curve = CurveSpec {
            kind: CurveKind::Analytic {
                family,
                time_scale: 1.0,
            },
            ambient,
            range,
            eps_reg: Self::DEFAULT_EPS_REG,
        };
        if ambient == ManifoldId::HypHalfSpace3 {
            // probe the window for points leaving the half-space
            for t in uniform_grid(range.0, range.1, 257) {
                ambient.check_point(curve.eval_unchecked(t, 0).as_slice())?;
            }
        }
        Ok(curve)
    }

    pub fn sampled(ambient: ManifoldId, ts: Vec<f64>, points: Vec<Vector>) -> Result<Self> {
        ambient.validate()?;
        for p in &points {
            ambient.check_point(p.as_slice())?;
        }
        if !ts.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvalidInput(
                "sample parameters must be strictly increasing".into(),
            ));
        }
        let samples = Samples::new(ts, points)?;
        let range = (samples.ts[0], *samples.ts.last().unwrap());
        Ok(CurveSpec {
            kind: CurveKind::Sampled(samples),
            ambient,
            range,
            eps_reg: Self::DEFAULT_EPS_REG,
        })
    }

    pub fn with_eps_reg(mut self, eps_reg: f64) -> Self {
        self.eps_reg = eps_reg;
        self
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn ambient(&self) -> ManifoldId {
        self.ambient
    }

    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    pub fn eps_reg(&self) -> f64 {
        self.eps_reg
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn samples(&self) -> Option<&Samples> {
        match &self.kind {
            CurveKind::Sampled(s) => Some(s),
            CurveKind::Analytic { .. } => None,
        }
    }

    pub fn family(&self) -> Option<&Family> {
        match &self.kind {
            CurveKind::Analytic { family, .. } => Some(family),
            CurveKind::Sampled(_) => None,
        }
    }

    pub(crate) fn eval_unchecked(&self, t: f64, order: u8) -> Vector {
        match &self.kind {
            CurveKind::Analytic { family, time_scale } => {
                family.eval(time_scale * t, order) * time_scale.powi(order as i32)
            }
            CurveKind::Sampled(s) => s.eval(t, order),
        }
    }

    fn check_t(&self, t: f64) -> Result<()> {
        let (a, b) = self.range;
        let slack = 1e-12 * (b - a).abs().max(1.0);
        if !(t >= a - slack && t <= b + slack) {
            return Err(Error::OutOfRange { t, min: a, max: b });
        }
        Ok(())
    }

    /// `γ(t)`, `γ'(t)` or `γ''(t)`.
    ///
    /// First derivatives are checked for regularity against `eps_reg`
    /// (measured in the ambient metric).
    pub fn evaluate(&self, t: f64, order: u8) -> Result<Vector> {
        if order > 2 {
            return Err(Error::InvalidInput(format!(
                "derivative order must be 0, 1 or 2 (got {order})"
            )));
        }
        self.check_t(t)?;
        let v = self.eval_unchecked(t, order);
        if order == 1 {
            let p = self.eval_unchecked(t, 0);
            let speed = self.ambient.norm(p.as_slice(), v.as_slice());
            if !(speed > self.eps_reg) {
                return Err(Error::DegenerateCurve { t, speed });
            }
        }
        Ok(v)
    }

    /// `γ'''(t)`. Analytic curves use a fourth-order central difference of
    /// the closed-form `γ''`; sampled curves differentiate their `γ''` samples.
    pub fn third_derivative(&self, t: f64) -> Result<Vector> {
        self.check_t(t)?;
        match &self.kind {
            CurveKind::Analytic { .. } => {
                let h = 1e-3 * t.abs().max(1.0);
                let f = |x: f64| self.eval_unchecked(x, 2);
                Ok((f(t - 2.0 * h) - f(t + 2.0 * h) + (f(t + h) - f(t - h)) * 8.0) / (12.0 * h))
            }
            CurveKind::Sampled(s) => s.third(t),
        }
    }

    /// Ambient speed `‖γ'(t)‖_g`.
    pub fn speed(&self, t: f64) -> Result<f64> {
        let p = self.evaluate(t, 0)?;
        let v = self.evaluate(t, 1)?;
        Ok(self.ambient.norm(p.as_slice(), v.as_slice()))
    }

    fn speed_unchecked(&self, t: f64) -> f64 {
        let p = self.eval_unchecked(t, 0);
        let v = self.eval_unchecked(t, 1);
        self.ambient.norm(p.as_slice(), v.as_slice())
    }

    pub fn grid(&self, count: usize) -> Vec<f64> {
        uniform_grid(self.range.0, self.range.1, count)
    }

    /// Positions and first two derivatives on `count` uniform parameters.
    pub fn discretize(&self, count: usize) -> Result<Discretized> {
        if count < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                got: count,
            });
        }
        self.discretize_at(&self.grid(count))
    }

    /// Positions and derivatives at the given parameters.
    pub fn discretize_at(&self, ts: &[f64]) -> Result<Discretized> {
        let mut out = Discretized {
            ts: ts.to_vec(),
            points: Vec::with_capacity(ts.len()),
            d1: Vec::with_capacity(ts.len()),
            d2: Vec::with_capacity(ts.len()),
        };
        for &t in ts {
            out.points.push(self.evaluate(t, 0)?);
            out.d1.push(self.evaluate(t, 1)?);
            out.d2.push(self.evaluate(t, 2)?);
        }
        Ok(out)
    }

    /// Samples the curve on `count` uniform parameters.
    pub fn resample(&self, count: usize) -> Result<CurveSpec> {
        if count < 4 {
            return Err(Error::TooFewSamples {
                needed: 4,
                got: count,
            });
        }
        if let CurveKind::Sampled(s) = &self.kind {
            if s.len() == count && is_uniform(&s.ts) {
                return Ok(self.clone());
            }
        }
        let ts = self.grid(count);
        let mut points = Vec::with_capacity(count);
        for &t in &ts {
            // regularity is part of the contract
            self.evaluate(t, 1)?;
            points.push(self.evaluate(t, 0)?);
        }
        Ok(CurveSpec::sampled(self.ambient, ts, points)?.with_eps_reg(self.eps_reg))
    }

    /// Ambient arc length over `[a, b]` by composite Gauss–Legendre quadrature.
    pub fn arc_length(&self, a: f64, b: f64) -> Result<f64> {
        self.check_t(a)?;
        self.check_t(b)?;
        let panels = match &self.kind {
            CurveKind::Sampled(s) => 4 * s.len(),
            CurveKind::Analytic { .. } => 256,
        };
        Ok(integrate(|t| self.speed_unchecked(t), a, b, panels, 8))
    }

    /// Reparametrizes by ambient arc length, returning `count` samples
    /// equispaced in arc length over `[0, L]`.
    ///
    /// The arc-length function is tabulated by quadrature and inverted by
    /// safeguarded Newton iteration (it is strictly increasing for a regular
    /// curve).
    pub fn arc_length_reparametrized(&self, count: usize) -> Result<CurveSpec> {
        if count < 4 {
            return Err(Error::TooFewSamples {
                needed: 4,
                got: count,
            });
        }
        let (a, b) = self.range;
        let table_n = 16 * count;
        let knots = uniform_grid(a, b, table_n + 1);
        let mut cum = vec![0.0; table_n + 1];
        for i in 0..table_n {
            self.evaluate(knots[i], 1)?;
            cum[i + 1] =
                cum[i] + integrate(|t| self.speed_unchecked(t), knots[i], knots[i + 1], 1, 8);
        }
        let total = cum[table_n];
        let targets = uniform_grid(0.0, total, count);
        let mut points = Vec::with_capacity(count);
        for &s in &targets {
            let k = match cum.partition_point(|&c| c <= s) {
                0 => 0,
                p => (p - 1).min(table_n - 1),
            };
            let (lo, hi) = (knots[k], knots[k + 1]);
            let base = cum[k];
            let mut t = lo + (hi - lo) * ((s - base) / (cum[k + 1] - base)).clamp(0.0, 1.0);
            for _ in 0..50 {
                let f = base + integrate(|x| self.speed_unchecked(x), lo, t, 1, 8) - s;
                let step = f / self.speed_unchecked(t);
                t = (t - step).clamp(lo, hi);
                if step.abs() < 1e-15 * (1.0 + t.abs()) {
                    break;
                }
            }
            points.push(self.evaluate(t, 0)?);
        }
        Ok(CurveSpec::sampled(self.ambient, targets, points)?.with_eps_reg(self.eps_reg))
    }

    /// For an analytic curve of constant ambient speed `v`, the same curve
    /// reparametrized as `t ↦ γ(t/v)` over the rescaled window.
    pub fn unit_speed(&self) -> Result<CurveSpec> {
        let CurveKind::Analytic { family, time_scale } = &self.kind else {
            return Err(Error::InvalidInput(
                "unit_speed needs an analytic curve; use arc_length_reparametrized".into(),
            ));
        };
        let grid = self.grid(65);
        let speeds: Vec<f64> = grid.iter().map(|&t| self.speed_unchecked(t)).collect();
        let v = speeds[0];
        if !(v > self.eps_reg) {
            return Err(Error::DegenerateCurve {
                t: self.range.0,
                speed: v,
            });
        }
        let deviation = speeds
            .iter()
            .map(|s| (s / v - 1.0).abs())
            .fold(0.0, f64::max);
        if deviation > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "speed is not constant (relative variation {deviation:e})"
            )));
        }
        Ok(CurveSpec {
            kind: CurveKind::Analytic {
                family: family.clone(),
                time_scale: time_scale / v,
            },
            ambient: self.ambient,
            range: (self.range.0 * v, self.range.1 * v),
            eps_reg: self.eps_reg,
        })
    }
}

fn check_range((a, b): (f64, f64)) -> Result<()> {
    if a.is_finite() && b.is_finite() && b > a {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "parameter range must satisfy t0 < t1 (got [{a}, {b}])"
        )))
    }
}
