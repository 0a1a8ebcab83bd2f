//! Shared numerical kernels: fixed-step RK4, finite differences, Gram
//! determinants and metric Gram–Schmidt.

mod diff;
mod linalg;
mod ode;
mod quad;

pub use diff::{cumulative_integral, finite_diff, fornberg_weights, is_uniform, lagrange_eval};
pub use linalg::{gram_det, gram_matrix, orthonormalize, Conformal, Euclidean, Metric};
pub use ode::{rk4, rk4_projected, FnSystem, OdeSystem, Trajectory};
pub use quad::{gauss_legendre, integrate};

use serde::Serialize;

/// Per-sample residual values with their maximum and RMS.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub rms: f64,
    pub per_sample: Vec<(f64, f64)>,
}

impl ResidualReport {
    pub fn from_samples(per_sample: Vec<(f64, f64)>) -> Self {
        let n = per_sample.len();
        let (max_abs, sum_sq) = per_sample
            .iter()
            .fold((0.0_f64, 0.0_f64), |(m, s), &(_, v)| {
                (m.max(v.abs()), s + v * v)
            });
        let rms = if n == 0 {
            0.0
        } else {
            (sum_sq / n as f64).sqrt()
        };
        ResidualReport {
            max_abs,
            rms,
            per_sample,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_abs < tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_statistics() {
        let r = ResidualReport::from_samples(vec![(0.0, 3.0), (1.0, -4.0)]);
        assert_eq!(r.max_abs, 4.0);
        assert!((r.rms - (12.5f64).sqrt()).abs() < 1e-15);
        assert!(r.max_abs >= r.rms);
        let empty = ResidualReport::from_samples(vec![]);
        assert_eq!((empty.max_abs, empty.rms), (0.0, 0.0));
    }
}
