use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Vec3;

/// A point of the upper half-space `z > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HypPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if z > 0.0 && x.is_finite() && y.is_finite() && z.is_finite() {
            Ok(HypPoint { x, y, z })
        } else {
            Err(Error::NotInHalfSpace { x, y, z })
        }
    }

    pub fn from_vec3(p: &Vec3) -> Result<Self> {
        HypPoint::new(p.x, p.y, p.z)
    }

    pub fn to_vec3(self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }
}

/// `g_p(u, v) = (u · v) / z²`.
pub fn hyp_metric(p: &HypPoint, u: &Vec3, v: &Vec3) -> f64 {
    u.dot(v) / (p.z * p.z)
}

pub fn hyp_norm(p: &HypPoint, u: &Vec3) -> f64 {
    u.norm() / p.z
}

/// Christoffel symbols `Γ[k][i][j] = Γ^k_{ij}` of the half-space metric:
/// `Γ^k_{ij} = −(δ_{ik} δ_{j3} + δ_{jk} δ_{i3} − δ_{ij} δ_{k3}) / z`.
pub fn hyp_christoffel(p: &HypPoint) -> [[[f64; 3]; 3]; 3] {
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let mut out = [[[0.0; 3]; 3]; 3];
    for (k, block) in out.iter_mut().enumerate() {
        for (i, row) in block.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = -(d(i, k) * d(j, 2) + d(j, k) * d(i, 2) - d(i, j) * d(k, 2)) / p.z;
            }
        }
    }
    out
}

/// `Γ(u, v)^k = Σ Γ^k_{ij} u^i v^j`, in closed form.
pub(crate) fn connection(z: f64, u: &Vec3, v: &Vec3) -> Vec3 {
    -(u * v.z + v * u.z - Vec3::z() * u.dot(v)) / z
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn metric_matrix(p: &Vec3) -> [[f64; 3]; 3] {
        let w = 1.0 / (p.z * p.z);
        [[w, 0.0, 0.0], [0.0, w, 0.0], [0.0, 0.0, w]]
    }

    /// `Γ^k_ij = ½ g^{kl}(∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij})` with central
    /// differences of the metric.
    fn christoffel_oracle(p: &Vec3) -> [[[f64; 3]; 3]; 3] {
        let h = 1e-5;
        let dg = |l: usize| {
            let mut e = Vec3::zeros();
            e[l] = h;
            let (a, b) = (metric_matrix(&(p + e)), metric_matrix(&(p - e)));
            let mut out = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    out[i][j] = (a[i][j] - b[i][j]) / (2.0 * h);
                }
            }
            out
        };
        let derivs = [dg(0), dg(1), dg(2)];
        let inv = p.z * p.z;
        let mut out = [[[0.0; 3]; 3]; 3];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    out[k][i][j] =
                        0.5 * inv * (derivs[i][j][k] + derivs[j][i][k] - derivs[k][i][j]);
                }
            }
        }
        out
    }

    #[test]
    fn metric_examples() {
        let e1 = Vec3::x();
        assert_eq!(
            hyp_metric(&HypPoint::new(0.0, 0.0, 1.0).unwrap(), &e1, &e1),
            1.0
        );
        assert_eq!(
            hyp_metric(&HypPoint::new(0.0, 0.0, 2.0).unwrap(), &e1, &e1),
            0.25
        );
        assert_eq!(
            hyp_metric(&HypPoint::new(5.0, 3.0, 1.0).unwrap(), &e1, &Vec3::y()),
            0.0
        );
    }

    #[test]
    fn rejects_lower_half_space() {
        assert!(matches!(
            HypPoint::new(0.0, 0.0, 0.0),
            Err(Error::NotInHalfSpace { .. })
        ));
        assert!(matches!(
            HypPoint::new(0.0, 0.0, -1.0),
            Err(Error::NotInHalfSpace { .. })
        ));
    }

    #[test]
    fn christoffel_examples() {
        let g = hyp_christoffel(&HypPoint::new(0.0, 0.0, 1.0).unwrap());
        assert_eq!(g[0][0][2], -1.0);
        assert_eq!(g[2][0][0], 1.0);
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    if k != i && i != j && j != k {
                        assert_eq!(g[k][i][j], 0.0);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn christoffel_matches_metric_derivatives(
            x in -5.0..5.0f64, y in -5.0..5.0f64, z in 0.3..4.0f64,
        ) {
            let p = Vec3::new(x, y, z);
            let exact = hyp_christoffel(&HypPoint::from_vec3(&p).unwrap());
            let oracle = christoffel_oracle(&p);
            for k in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        prop_assert!((exact[k][i][j] - oracle[k][i][j]).abs() < 1e-6);
                    }
                }
            }
        }

        #[test]
        fn connection_contracts_symbols(
            z in 0.1..3.0f64,
            u in prop::array::uniform3(-2.0..2.0f64),
            v in prop::array::uniform3(-2.0..2.0f64),
        ) {
            let g = hyp_christoffel(&HypPoint::new(0.0, 0.0, z).unwrap());
            let (u, v) = (Vec3::from(u), Vec3::from(v));
            let c = connection(z, &u, &v);
            for k in 0..3 {
                let mut sum = 0.0;
                for i in 0..3 {
                    for j in 0..3 {
                        sum += g[k][i][j] * u[i] * v[j];
                    }
                }
                prop_assert!((c[k] - sum).abs() < 1e-12 * (1.0 + sum.abs()));
            }
        }
    }
}
