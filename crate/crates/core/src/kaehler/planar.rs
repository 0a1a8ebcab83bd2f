use serde::Serialize;

use crate::curve::{CurveSpec, Discretized};
use crate::error::{Error, Result};
use crate::numerics::ResidualReport;
use crate::{ManifoldId, Vector};

use super::structure::ComplexStructure;

/// Samples of a curve in `C^n` with its complex structure. Sampled curves
/// are evaluated on their own nodes, analytic ones on `count` parameters.
pub(crate) fn sample(curve: &CurveSpec, count: usize) -> Result<(ComplexStructure, Discretized)> {
    let ManifoldId::FlatComplex(n) = curve.ambient() else {
        return Err(Error::InvalidInput(format!(
            "expected a curve in complex space, got {}",
            curve.ambient().schema_name()
        )));
    };
    let ts = match curve.samples() {
        Some(s) => s.ts.clone(),
        None => curve.grid(count),
    };
    let grid = curve.discretize_at(&ts)?;
    Ok((ComplexStructure::new(n)?, grid))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RmJReport {
    pub is_rm: bool,
    /// `(t, κ_1(t))` with `κ_1 = g(γ'', Jγ') / g(γ', γ')`.
    pub kappa1: Vec<(f64, f64)>,
    /// `‖γ'' − κ_1 Jγ'‖ / (‖γ''‖ + ‖γ'‖²)` per sample. The remainder carries
    /// every curvature beyond `κ_1`.
    pub residual: ResidualReport,
}

/// Tests whether `J(γ')` is an RM field along `γ`, i.e. whether
/// `γ'' = κ_1 Jγ'` for some function `κ_1`.
pub fn rm_j_test(curve: &CurveSpec, count: usize, tol: f64) -> Result<RmJReport> {
    let (j, grid) = sample(curve, count)?;
    let mut kappa1 = Vec::with_capacity(grid.ts.len());
    let mut per_sample = Vec::with_capacity(grid.ts.len());
    for ((t, d1), d2) in grid.ts.iter().zip(&grid.d1).zip(&grid.d2) {
        let jd1 = j.apply_unchecked(d1.as_slice());
        let speed2 = d1.norm_squared();
        let k = d2.dot(&jd1) / speed2;
        let rest: Vector = d2 - &jd1 * k;
        kappa1.push((*t, k));
        per_sample.push((*t, rest.norm() / (d2.norm() + speed2)));
    }
    let residual = ResidualReport::from_samples(per_sample);
    Ok(RmJReport {
        is_rm: residual.passes(tol),
        kappa1,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeedReport {
    pub is_constant: bool,
    /// `(max ‖γ'‖ − min ‖γ'‖) / mean ‖γ'‖`.
    pub max_relative_variation: f64,
}

pub fn constant_speed_check(curve: &CurveSpec, count: usize, tol: f64) -> Result<SpeedReport> {
    let ts = match curve.samples() {
        Some(s) => s.ts.clone(),
        None => curve.grid(count),
    };
    let speeds = ts
        .iter()
        .map(|t| curve.speed(*t))
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = speeds.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| {
        (lo.min(*v), hi.max(*v))
    });
    let mean = speeds.iter().sum::<f64>() / speeds.len() as f64;
    let variation = (hi - lo) / mean;
    Ok(SpeedReport {
        is_constant: variation < tol,
        max_relative_variation: variation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanarReport {
    pub is_planar: bool,
    /// Coefficient of `γ'` in `γ''`.
    pub a: Vec<(f64, f64)>,
    /// Coefficient of `Jγ'` in `γ''`.
    pub b: Vec<(f64, f64)>,
    /// `‖γ'' − aγ' − bJγ'‖ / (‖γ''‖ + ‖γ'‖²)` per sample.
    pub residual: ResidualReport,
}

/// Tests whether `γ''` stays in `span{γ', Jγ'}`.
pub fn analytic_planar_test(curve: &CurveSpec, count: usize, tol: f64) -> Result<PlanarReport> {
    let (j, grid) = sample(curve, count)?;
    let n = grid.ts.len();
    let (mut a, mut b, mut per_sample) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    for ((t, d1), d2) in grid.ts.iter().zip(&grid.d1).zip(&grid.d2) {
        // γ' and Jγ' are orthogonal with equal norms
        let jd1 = j.apply_unchecked(d1.as_slice());
        let speed2 = d1.norm_squared();
        let (ca, cb) = (d2.dot(d1) / speed2, d2.dot(&jd1) / speed2);
        let rest: Vector = d2 - d1 * ca - &jd1 * cb;
        a.push((*t, ca));
        b.push((*t, cb));
        per_sample.push((*t, rest.norm() / (d2.norm() + speed2)));
    }
    let residual = ResidualReport::from_samples(per_sample);
    Ok(PlanarReport {
        is_planar: residual.passes(tol),
        a,
        b,
        residual,
    })
}
