use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::Vector;

/// A symmetric bilinear form on the tangent space at a fixed point.
pub trait Metric {
    fn inner(&self, u: &[f64], v: &[f64]) -> f64;

    fn norm(&self, u: &[f64]) -> f64 {
        self.inner(u, u).sqrt()
    }
}

/// The standard dot product.
#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl Metric for Euclidean {
    fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        u.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

/// A conformally flat metric `factor · δ` (e.g. `1/z²` in the half-space).
#[derive(Debug, Clone, Copy)]
pub struct Conformal(pub f64);

impl Metric for Conformal {
    fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        self.0 * Euclidean.inner(u, v)
    }
}

pub fn gram_matrix<M: Metric + ?Sized>(metric: &M, vectors: &[Vector]) -> DMatrix<f64> {
    let k = vectors.len();
    DMatrix::from_fn(k, k, |i, j| {
        metric.inner(vectors[i].as_slice(), vectors[j].as_slice())
    })
}

/// Determinant of the Gram matrix `g(v_i, v_j)`; zero iff the vectors are
/// linearly dependent.
pub fn gram_det<M: Metric + ?Sized>(metric: &M, vectors: &[Vector]) -> f64 {
    if vectors.is_empty() {
        return 1.0;
    }
    gram_matrix(metric, vectors).determinant()
}

/// Modified Gram–Schmidt under `metric`, with one reorthogonalization pass.
pub fn orthonormalize<M: Metric + ?Sized>(metric: &M, vectors: &[Vector]) -> Result<Vec<Vector>> {
    let mut out: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let scale = metric.norm(v.as_slice());
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::DependentInput);
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for e in &out {
                let c = metric.inner(e.as_slice(), w.as_slice());
                w.axpy(-c, e, 1.0);
            }
        }
        let norm = metric.norm(w.as_slice());
        if norm <= 1e-10 * scale {
            return Err(Error::DependentInput);
        }
        out.push(w / norm);
    }
    Ok(out)
}
