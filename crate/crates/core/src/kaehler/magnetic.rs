use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::numerics::{rk4, FnSystem};
use crate::{ManifoldId, Vector};

use super::planar::sample;
use super::structure::ComplexStructure;

/// Strength `κ_1` of the magnetic field `κ_1 Ω`, constant or a function of
/// the curve parameter.
#[derive(Clone)]
pub enum MagneticField {
    Constant(f64),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl MagneticField {
    pub fn function(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        MagneticField::Function(Arc::new(f))
    }

    pub fn strength(&self, t: f64) -> f64 {
        match self {
            MagneticField::Constant(k) => *k,
            MagneticField::Function(f) => f(t),
        }
    }
}

impl fmt::Debug for MagneticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagneticField::Constant(k) => f.debug_tuple("Constant").field(k).finish(),
            MagneticField::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// Trajectory of `γ'' = κ_1(t) J(γ')` from `γ(t_0) = p0`, `γ'(t_0) = v0`,
/// integrated with `steps` RK4 steps and returned as a sampled curve.
pub fn magnetic_integrate(
    n: usize,
    p0: &[f64],
    v0: &[f64],
    field: &MagneticField,
    range: (f64, f64),
    steps: usize,
) -> Result<CurveSpec> {
    let j = ComplexStructure::new(n)?;
    let dim = 2 * n;
    for v in [p0, v0] {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    let system = FnSystem::new(2 * dim, |t, y: &[f64], dy: &mut [f64]| {
        let k = field.strength(t);
        let jv = j.apply_unchecked(&y[dim..]);
        dy[..dim].copy_from_slice(&y[dim..]);
        for (d, w) in dy[dim..].iter_mut().zip(jv.iter()) {
            *d = k * w;
        }
    });
    let y0: Vec<f64> = p0.iter().chain(v0).copied().collect();
    let traj = rk4(&system, &y0, range.0, range.1, steps)?;
    let points = traj
        .iter()
        .map(|(_, y)| Vector::from_column_slice(&y[..dim]))
        .collect();
    CurveSpec::sampled(ManifoldId::FlatComplex(n), traj.ts.clone(), points)
}

/// Algebraic circle fit in the complex line through the first sample
/// spanned by `γ'` and `Jγ'`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleFit {
    pub center: Vec<f64>,
    pub radius: f64,
    /// Largest `|‖p − center‖ − radius|` over the samples.
    pub fit_residual: f64,
    /// Largest distance of a sample from the fitted complex line.
    pub off_plane: f64,
    /// `+1` when the circle turns toward `Jγ'` (counter-clockwise in `C`),
    /// `−1` otherwise.
    pub orientation: f64,
}

/// Least-squares (Kåsa) circle through the samples of a curve in `C^n`.
pub fn circle_params(curve: &CurveSpec, count: usize) -> Result<CircleFit> {
    let (j, grid) = sample(curve, count)?;
    let origin = &grid.points[0];
    let speed = grid.d1[0].norm();
    if !(speed > curve.eps_reg()) {
        return Err(Error::DegenerateFit);
    }
    let e1: Vector = &grid.d1[0] / speed;
    let e2 = j.apply_unchecked(e1.as_slice());

    let mut off_plane = 0.0_f64;
    let coords: Vec<(f64, f64)> = grid
        .points
        .iter()
        .map(|p| {
            let d: Vector = p - origin;
            let (x, y) = (d.dot(&e1), d.dot(&e2));
            off_plane = off_plane.max((d - &e1 * x - &e2 * y).norm());
            (x, y)
        })
        .collect();

    let m = coords.len();
    let (mx, my) = coords.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + x / m as f64, b + y / m as f64)
    });
    let design = DMatrix::from_fn(m, 3, |i, c| match c {
        0 => coords[i].0 - mx,
        1 => coords[i].1 - my,
        _ => 1.0,
    });
    let rhs = DVector::from_fn(m, |i, _| {
        let (x, y) = (coords[i].0 - mx, coords[i].1 - my);
        -(x * x + y * y)
    });
    let svd = design.svd(true, true);
    let sv = &svd.singular_values;
    if sv.min() <= 1e-10 * sv.max() {
        return Err(Error::DegenerateFit);
    }
    let sol = svd.solve(&rhs, 0.0).map_err(|_| Error::DegenerateFit)?;
    let (cx, cy) = (-sol[0] / 2.0, -sol[1] / 2.0);
    let r2 = cx * cx + cy * cy - sol[2];
    if !(r2 > 0.0) {
        return Err(Error::DegenerateFit);
    }
    let radius = r2.sqrt();
    let extent = coords
        .iter()
        .map(|(x, y)| (x - mx).hypot(y - my))
        .fold(0.0, f64::max);
    if radius > 1e8 * extent.max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateFit);
    }

    let mut fit_residual = 0.0_f64;
    let mut area = 0.0;
    for (i, (x, y)) in coords.iter().enumerate() {
        let (u, v) = (x - mx - cx, y - my - cy);
        fit_residual = fit_residual.max((u.hypot(v) - radius).abs());
        if let Some((x2, y2)) = coords.get(i + 1) {
            area += u * (y2 - my - cy) - v * (x2 - mx - cx);
        }
    }
    let center: Vector = origin + &e1 * (mx + cx) + &e2 * (my + cy);
    Ok(CircleFit {
        center: center.iter().copied().collect(),
        radius,
        fit_residual,
        off_plane,
        orientation: if area >= 0.0 { 1.0 } else { -1.0 },
    })
}
