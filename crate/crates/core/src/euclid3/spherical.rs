use nalgebra::{Matrix2, Vector2};
use serde::Serialize;

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::{to_vec3, Tolerances};

use super::transport::{default_normal, rmf_transport, TransportMode};

/// Total-least-squares line `⟨normal, p⟩ = offset` with `offset ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineFit {
    pub normal: [f64; 2],
    pub offset: f64,
    pub max_deviation: f64,
}

/// Fits a line to planar points by total least squares.
///
/// A cluster with no measurable spread (relative `1e-9`) is treated as a
/// single point `p`; the line returned is the one through `p` farthest from
/// the origin, i.e. normal to `p`.
pub fn fit_line(points: &[[f64; 2]]) -> Result<LineFit> {
    if points.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let n = points.len() as f64;
    let centroid = points
        .iter()
        .fold(Vector2::zeros(), |acc, p| acc + Vector2::new(p[0], p[1]))
        / n;
    let scale = points.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    if scale <= CurveSpec::DEFAULT_EPS_REG {
        return Err(Error::DegenerateDevelopment);
    }
    let mut cov = Matrix2::zeros();
    for p in points {
        let d = Vector2::new(p[0], p[1]) - centroid;
        cov += d * d.transpose();
    }
    cov /= n;
    let eig = cov.symmetric_eigen();
    let (small, large) = if eig.eigenvalues[0] <= eig.eigenvalues[1] {
        (0, 1)
    } else {
        (1, 0)
    };
    let spread = eig.eigenvalues[large].max(0.0).sqrt();
    let mut normal: Vector2<f64> = if spread <= 1e-9 * scale {
        if centroid.norm() <= CurveSpec::DEFAULT_EPS_REG {
            return Err(Error::DegenerateDevelopment);
        }
        centroid.normalize()
    } else {
        eig.eigenvectors.column(small).into_owned()
    };
    let mut offset = normal.dot(&centroid);
    if offset < 0.0 {
        normal = -normal;
        offset = -offset;
    }
    let max_deviation = points
        .iter()
        .map(|p| (normal.dot(&Vector2::new(p[0], p[1])) - offset).abs())
        .fold(0.0, f64::max);
    Ok(LineFit {
        normal: [normal.x, normal.y],
        offset,
        max_deviation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SphericalVerdict {
    /// Development on a line off the origin.
    Spherical,
    /// Development on a line through the origin.
    Plane,
    NotSpherical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalReport {
    pub line: LineFit,
    /// `1 / offset`.
    pub radius_estimate: f64,
    pub verdict: SphericalVerdict,
}

/// Tests whether a curve is spherical from the line fit of its normal
/// development. The points must lie on a line within `tol.residual` (relative
/// to the development's size); the line passes through the origin when
/// `offset ≤ 10 · max_deviation + tol.residual`.
pub fn spherical_test(
    curve: &CurveSpec,
    steps: usize,
    tol: &Tolerances,
) -> Result<SphericalReport> {
    let (a, _) = curve.range();
    let n0 = default_normal(&to_vec3(&curve.evaluate(a, 1)?));
    let sol = rmf_transport(curve, &n0, steps, TransportMode::Stabilized)?;
    let points = sol.development().points();
    let line = fit_line(&points)?;
    let scale = points
        .iter()
        .map(|p| p[0].hypot(p[1]))
        .fold(0.0, f64::max)
        .max(1.0);
    let verdict = if line.max_deviation >= tol.residual * scale {
        SphericalVerdict::NotSpherical
    } else if line.offset <= 10.0 * line.max_deviation + tol.residual {
        SphericalVerdict::Plane
    } else {
        SphericalVerdict::Spherical
    };
    Ok(SphericalReport {
        line,
        radius_estimate: 1.0 / line.offset,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Family;
    use crate::ManifoldId;
    use std::f64::consts::PI;

    fn curve(family: Family, range: (f64, f64)) -> CurveSpec {
        CurveSpec::analytic(ManifoldId::Euclid3, family, range).unwrap()
    }

    #[test]
    fn line_fit_basics() {
        let fit = fit_line(&[[1.0, 0.0], [1.0, 2.0], [1.0, -3.0]]).unwrap();
        assert!((fit.offset - 1.0).abs() < 1e-12 && fit.max_deviation < 1e-12);
        assert!((fit.normal[0] - 1.0).abs() < 1e-12);
        let point = fit_line(&[[0.0, -0.5]; 4]).unwrap();
        assert!((point.offset - 0.5).abs() < 1e-15);
        assert_eq!(
            fit_line(&[[0.0, 0.0]; 3]),
            Err(Error::DegenerateDevelopment)
        );
    }

    #[test]
    fn great_circle_on_radius_two() {
        let c = curve(
            Family::Circle {
                center: vec![0.0; 3],
                radius: 2.0,
                omega: 1.0,
            },
            (0.0, 2.0 * PI),
        );
        let rep = spherical_test(&c, 1000, &Tolerances::default()).unwrap();
        assert!((rep.line.offset - 0.5).abs() < 1e-4);
        assert!((rep.radius_estimate - 2.0).abs() < 1e-4);
        assert_eq!(rep.verdict, SphericalVerdict::Spherical);
    }

    #[test]
    fn curve_on_unit_sphere() {
        let c = curve(
            Family::Spherical {
                radius: 1.0,
                amplitude: 0.7,
                frequency: 4.0,
            },
            (0.0, 2.0 * PI),
        );
        let rep = spherical_test(&c, 4000, &Tolerances::default()).unwrap();
        assert!((rep.line.offset - 1.0).abs() < 1e-3);
        assert_eq!(rep.verdict, SphericalVerdict::Spherical);
    }

    #[test]
    fn ellipse_is_plane() {
        let c = curve(
            Family::Ellipse {
                center: vec![0.0; 3],
                a: 3.0,
                b: 1.0,
            },
            (0.0, 2.0 * PI),
        );
        let rep = spherical_test(&c, 2000, &Tolerances::default()).unwrap();
        assert_eq!(rep.verdict, SphericalVerdict::Plane);
    }

    #[test]
    fn helix_is_neither() {
        let c = curve(
            Family::Helix {
                a: 1.0,
                b: 1.0,
                z0: 0.0,
            },
            (0.0, 10.0),
        );
        let rep = spherical_test(&c, 2000, &Tolerances::default()).unwrap();
        assert_eq!(rep.verdict, SphericalVerdict::NotSpherical);
    }

    #[test]
    fn straight_line_is_degenerate() {
        let c = curve(
            Family::Line {
                point: vec![0.0; 3],
                direction: vec![1.0, 1.0, 0.0],
            },
            (0.0, 1.0),
        );
        assert_eq!(
            spherical_test(&c, 100, &Tolerances::default()),
            Err(Error::DegenerateDevelopment)
        );
    }
}
