use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::numerics::{cumulative_integral, finite_diff};
use crate::{to_vec3, Vec3, Vector};

use super::require_euclid;

#[derive(Debug, Clone, PartialEq)]
pub struct FrenetSample {
    pub t: f64,
    /// `‖γ'(t)‖`, converts `d/dt` into `d/ds`.
    pub speed: f64,
    pub tangent: Vec3,
    /// `None` where the curvature vanishes and the frame is undefined.
    pub normal: Option<Vec3>,
    pub binormal: Option<Vec3>,
    pub kappa: f64,
    pub tau: Option<f64>,
}

impl FrenetSample {
    pub fn frame_defined(&self) -> bool {
        self.normal.is_some()
    }
}

/// Tangent, normal, binormal, curvature and torsion along a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenetApparatus {
    pub samples: Vec<FrenetSample>,
}

/// Frenet apparatus on `count` uniform parameters.
///
/// Samples where `κ ≤ ε_reg` carry no normal, binormal or torsion.
pub fn frenet(curve: &CurveSpec, count: usize) -> Result<FrenetApparatus> {
    require_euclid(curve)?;
    let eps = curve.eps_reg();
    let mut samples = Vec::with_capacity(count);
    for t in curve.grid(count.max(2)) {
        let d1 = to_vec3(&curve.evaluate(t, 1)?);
        let d2 = to_vec3(&curve.evaluate(t, 2)?);
        let speed = d1.norm();
        let tangent = d1 / speed;
        let cross = d1.cross(&d2);
        let kappa = cross.norm() / speed.powi(3);
        let mut sample = FrenetSample {
            t,
            speed,
            tangent,
            normal: None,
            binormal: None,
            kappa,
            tau: None,
        };
        if kappa > eps {
            let d3 = to_vec3(&curve.third_derivative(t)?);
            let binormal = cross / cross.norm();
            sample.normal = Some(binormal.cross(&tangent));
            sample.binormal = Some(binormal);
            sample.tau = Some(cross.dot(&d3) / cross.norm_squared());
        }
        samples.push(sample);
    }
    Ok(FrenetApparatus { samples })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DevelopmentSample {
    pub t: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub speed: f64,
}

/// The plane curve `t ↦ (κ_1(t), κ_2(t))` of natural curvatures.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalDevelopment {
    pub samples: Vec<DevelopmentSample>,
}

impl NormalDevelopment {
    pub fn points(&self) -> Vec<[f64; 2]> {
        self.samples.iter().map(|s| [s.kappa1, s.kappa2]).collect()
    }
}

/// Natural curvatures from curvature and torsion:
/// `(κ_1, κ_2) = κ(cos θ, sin θ)` with `θ = θ_0 + ∫ τ ds`.
pub fn natural_from_frenet(apparatus: &FrenetApparatus, theta0: f64) -> Result<NormalDevelopment> {
    let mut ts = Vec::with_capacity(apparatus.samples.len());
    let mut rate = Vec::with_capacity(apparatus.samples.len());
    for s in &apparatus.samples {
        let tau = s.tau.ok_or(Error::FrenetUndefined { t: s.t })?;
        ts.push(s.t);
        rate.push(tau * s.speed);
    }
    let theta = cumulative_integral(&ts, &rate)?;
    let samples = apparatus
        .samples
        .iter()
        .zip(theta)
        .map(|(s, th)| {
            let th = theta0 + th;
            DevelopmentSample {
                t: s.t,
                kappa1: s.kappa * th.cos(),
                kappa2: s.kappa * th.sin(),
                speed: s.speed,
            }
        })
        .collect();
    Ok(NormalDevelopment { samples })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureTorsion {
    pub t: f64,
    pub kappa: f64,
    /// `None` where `κ_1² + κ_2²` vanishes.
    pub tau: Option<f64>,
}

/// Curvature and torsion from the normal development:
/// `κ = √(κ_1² + κ_2²)`, `τ = (κ_1 κ_2' − κ_1' κ_2)/(κ_1² + κ_2²)`, with
/// derivatives taken by finite differences and converted to arc length.
pub fn frenet_from_natural(dev: &NormalDevelopment) -> Result<Vec<CurvatureTorsion>> {
    let ts: Vec<f64> = dev.samples.iter().map(|s| s.t).collect();
    let pts: Vec<Vector> = dev
        .samples
        .iter()
        .map(|s| Vector::from_vec(vec![s.kappa1, s.kappa2]))
        .collect();
    let d = finite_diff(&ts, &pts, 1)?;
    // speeds only scale τ; the threshold uses the same ε as curve regularity
    let eps = CurveSpec::DEFAULT_EPS_REG;
    let out: Vec<CurvatureTorsion> = dev
        .samples
        .iter()
        .zip(&d)
        .map(|(s, dk)| {
            let k2 = s.kappa1 * s.kappa1 + s.kappa2 * s.kappa2;
            let tau =
                (k2 > eps * eps).then(|| (s.kappa1 * dk[1] - dk[0] * s.kappa2) / k2 / s.speed);
            CurvatureTorsion {
                t: s.t,
                kappa: k2.sqrt(),
                tau,
            }
        })
        .collect();
    if let Some(first) = out.first() {
        if out.iter().all(|c| c.tau.is_none()) {
            return Err(Error::FrenetUndefined { t: first.t });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Family;
    use crate::manifold::ManifoldId;
    use std::f64::consts::{PI, SQRT_2};

    fn curve(family: Family, range: (f64, f64)) -> CurveSpec {
        CurveSpec::analytic(ManifoldId::Euclid3, family, range).unwrap()
    }

    fn helix() -> CurveSpec {
        curve(
            Family::Helix {
                a: 1.0,
                b: 1.0,
                z0: 0.0,
            },
            (0.0, 10.0),
        )
    }

    #[test]
    fn unit_circle() {
        let c = curve(
            Family::Circle {
                center: vec![0.0; 3],
                radius: 1.0,
                omega: 1.0,
            },
            (0.0, 2.0 * PI),
        );
        let app = frenet(&c, 50).unwrap();
        for s in &app.samples {
            assert!((s.kappa - 1.0).abs() < 1e-12);
            assert!(s.tau.unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn helix_curvature_and_torsion() {
        for (a, b) in [(1.0, 1.0), (2.0, 0.5)] {
            let c = curve(Family::Helix { a, b, z0: 0.0 }, (0.0, 10.0));
            let app = frenet(&c, 40).unwrap();
            let (k, t) = (a / (a * a + b * b), b / (a * a + b * b));
            for s in &app.samples {
                assert!((s.kappa - k).abs() < 1e-12);
                assert!((s.tau.unwrap() - t).abs() < 1e-8);
                let (n, bn) = (s.normal.unwrap(), s.binormal.unwrap());
                assert!((s.tangent.cross(&n) - bn).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn straight_line_frame_undefined() {
        let c = curve(
            Family::Line {
                point: vec![0.0; 3],
                direction: vec![1.0, 2.0, 3.0],
            },
            (0.0, 1.0),
        );
        let app = frenet(&c, 10).unwrap();
        assert!(app
            .samples
            .iter()
            .all(|s| !s.frame_defined() && s.kappa == 0.0));
        assert!(matches!(
            natural_from_frenet(&app, 0.0),
            Err(Error::FrenetUndefined { .. })
        ));
    }

    #[test]
    fn plane_curve_development_is_on_axis() {
        let c = curve(
            Family::Ellipse {
                center: vec![0.0; 3],
                a: 2.0,
                b: 1.0,
            },
            (0.0, 6.0),
        );
        let app = frenet(&c, 100).unwrap();
        let dev = natural_from_frenet(&app, 0.0).unwrap();
        for (d, s) in dev.samples.iter().zip(&app.samples) {
            assert!((d.kappa1 - s.kappa).abs() < 1e-12 && d.kappa2.abs() < 1e-9);
        }
    }

    #[test]
    fn helix_development_rotates() {
        let app = frenet(&helix(), 1001).unwrap();
        let dev = natural_from_frenet(&app, 0.0).unwrap();
        for d in &dev.samples {
            let s = SQRT_2 * d.t;
            assert!((d.kappa1 - 0.5 * (s / 2.0).cos()).abs() < 1e-8);
            assert!((d.kappa2 - 0.5 * (s / 2.0).sin()).abs() < 1e-8);
        }
    }

    #[test]
    fn constant_development() {
        let dev = NormalDevelopment {
            samples: (0..10)
                .map(|i| DevelopmentSample {
                    t: i as f64 * 0.1,
                    kappa1: 3.0,
                    kappa2: 4.0,
                    speed: 1.0,
                })
                .collect(),
        };
        for c in frenet_from_natural(&dev).unwrap() {
            assert!((c.kappa - 5.0).abs() < 1e-15 && c.tau.unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn rotating_development_is_helix() {
        let dev = NormalDevelopment {
            samples: (0..=400)
                .map(|i| {
                    let s = i as f64 * 0.05;
                    DevelopmentSample {
                        t: s,
                        kappa1: 0.5 * (s / 2.0).cos(),
                        kappa2: 0.5 * (s / 2.0).sin(),
                        speed: 1.0,
                    }
                })
                .collect(),
        };
        for c in frenet_from_natural(&dev).unwrap() {
            assert!((c.kappa - 0.5).abs() < 1e-14);
            assert!((c.tau.unwrap() - 0.5).abs() < 1e-7);
        }
    }

    #[test]
    fn development_on_a_line_through_origin_is_planar() {
        let dev = NormalDevelopment {
            samples: (0..50)
                .map(|i| {
                    let t = i as f64 * 0.1;
                    DevelopmentSample {
                        t,
                        kappa1: 1.0 + t * t,
                        kappa2: 0.0,
                        speed: 2.0,
                    }
                })
                .collect(),
        };
        assert!(frenet_from_natural(&dev)
            .unwrap()
            .iter()
            .all(|c| c.tau.unwrap() == 0.0));
    }

    #[test]
    fn round_trip_recovers_curvature_and_torsion() {
        let sph = curve(
            Family::Spherical {
                radius: 2.0,
                amplitude: 0.5,
                frequency: 2.0,
            },
            (0.0, 6.0),
        );
        for c in [helix(), sph] {
            let app = frenet(&c, 2001).unwrap();
            let back = frenet_from_natural(&natural_from_frenet(&app, 0.3).unwrap()).unwrap();
            for (s, r) in app.samples.iter().zip(&back) {
                if s.kappa > 0.1 {
                    assert!((s.kappa - r.kappa).abs() < 1e-8);
                    assert!((s.tau.unwrap() - r.tau.unwrap()).abs() < 1e-7, "t={}", s.t);
                }
            }
        }
    }
}
