use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::manifold::ManifoldId;
use crate::Vector;

/// A point with an ordered orthonormal tuple of vectors (tangent first).
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub point: Vector,
    pub vectors: Vec<Vector>,
}

impl Frame {
    /// Largest entry of `|G - I|` for the Gram matrix under the ambient metric.
    pub fn gram_deviation(&self, ambient: ManifoldId) -> f64 {
        let p = self.point.as_slice();
        let mut worst = 0.0_f64;
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ambient.inner(p, u.as_slice(), v.as_slice()) - target).abs());
            }
        }
        worst
    }
}

/// Normal vector samples along a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalField {
    pub curve: CurveSpec,
    pub samples: Vec<(f64, Vector)>,
}

impl NormalField {
    pub fn new(curve: CurveSpec, samples: Vec<(f64, Vector)>) -> Result<Self> {
        let dim = curve.dim();
        if let Some((_, v)) = samples.iter().find(|(_, v)| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        if !samples.windows(2).all(|w| w[1].0 > w[0].0) {
            return Err(Error::GridMismatch(
                "field parameters must be strictly increasing".into(),
            ));
        }
        Ok(NormalField { curve, samples })
    }

    pub fn ts(&self) -> Vec<f64> {
        self.samples.iter().map(|(t, _)| *t).collect()
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.samples.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Worst `|g(N, T)|` and `|g(N, N) - 1|` over the samples, `T` the unit tangent.
    pub fn normality(&self) -> Result<(f64, f64)> {
        let ambient = self.curve.ambient();
        let mut tangential = 0.0_f64;
        let mut unit = 0.0_f64;
        for (t, n) in &self.samples {
            let p = self.curve.evaluate(*t, 0)?;
            let d = self.curve.evaluate(*t, 1)?;
            let p = p.as_slice();
            let speed = ambient.norm(p, d.as_slice());
            tangential =
                tangential.max((ambient.inner(p, n.as_slice(), d.as_slice()) / speed).abs());
            unit = unit.max((ambient.inner(p, n.as_slice(), n.as_slice()) - 1.0).abs());
        }
        Ok((tangential, unit))
    }

    /// Checks that the field parameters lie on `curve`'s window.
    pub(crate) fn check_on(&self, curve: &CurveSpec) -> Result<()> {
        if self.samples.len() < 5 {
            return Err(Error::GridMismatch(format!(
                "field needs at least 5 samples, has {}",
                self.samples.len()
            )));
        }
        if curve.ambient() != self.curve.ambient() {
            return Err(Error::GridMismatch(
                "field and curve ambients differ".into(),
            ));
        }
        let (a, b) = curve.range();
        let slack = 1e-12 * (b - a).abs().max(1.0);
        let (first, last) = (self.samples[0].0, self.samples[self.samples.len() - 1].0);
        if first < a - slack || last > b + slack {
            return Err(Error::GridMismatch(format!(
                "field spans [{first}, {last}] outside curve window [{a}, {b}]"
            )));
        }
        Ok(())
    }
}

/// Natural curvatures `κ_1 … κ_{n-1}` per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct NaturalCurvatures {
    pub samples: Vec<(f64, Vec<f64>)>,
}

impl NaturalCurvatures {
    /// The series of `κ_i` (zero-based `i`).
    pub fn series(&self, i: usize) -> Vec<(f64, f64)> {
        self.samples.iter().map(|(t, k)| (*t, k[i])).collect()
    }
}
