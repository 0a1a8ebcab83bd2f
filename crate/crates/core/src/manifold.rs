use crate::error::{Error, Result};
use crate::numerics::{Conformal, Euclidean, Metric};

/// The ambient space a curve lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ManifoldId {
    /// Euclidean 3-space.
    Euclid3,
    /// Hyperbolic 3-space, upper half-space model `{z > 0}` with `g = δ/z²`.
    HypHalfSpace3,
    /// Flat `C^n`, real dimension `2n`.
    FlatComplex(usize),
}

impl ManifoldId {
    /// Real dimension of the ambient space.
    pub fn dim(&self) -> usize {
        match self {
            ManifoldId::Euclid3 | ManifoldId::HypHalfSpace3 => 3,
            ManifoldId::FlatComplex(n) => 2 * n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ManifoldId::FlatComplex(0) => Err(Error::InvalidInput(
                "complex dimension must be positive".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Checks that `p` is a point of the manifold.
    pub fn check_point(&self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: p.len(),
            });
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        if *self == ManifoldId::HypHalfSpace3 && p[2] <= 0.0 {
            return Err(Error::NotInHalfSpace {
                x: p[0],
                y: p[1],
                z: p[2],
            });
        }
        Ok(())
    }

    /// Conformal factor of the metric at `p`: `g = factor · δ`.
    pub fn conformal_factor(&self, p: &[f64]) -> f64 {
        match self {
            ManifoldId::HypHalfSpace3 => 1.0 / (p[2] * p[2]),
            _ => 1.0,
        }
    }

    pub fn inner(&self, p: &[f64], u: &[f64], v: &[f64]) -> f64 {
        match self {
            ManifoldId::HypHalfSpace3 => Conformal(self.conformal_factor(p)).inner(u, v),
            _ => Euclidean.inner(u, v),
        }
    }

    pub fn norm(&self, p: &[f64], u: &[f64]) -> f64 {
        self.inner(p, u, u).sqrt()
    }

    /// Name used in the JSON curve schema.
    pub fn schema_name(&self) -> &'static str {
        match self {
            ManifoldId::Euclid3 => "euclid3",
            ManifoldId::HypHalfSpace3 => "hyp3",
            ManifoldId::FlatComplex(_) => "complex",
        }
    }
}
