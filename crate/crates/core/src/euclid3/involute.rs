use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::NormalField;
use crate::numerics::{finite_diff, ResidualReport};
use crate::to_vec3;

use super::require_euclid;

/// An involute sampled on the parameter grid of its evolute.
#[derive(Debug, Clone)]
pub struct Involute {
    pub curve: CurveSpec,
    /// `β' ≡ 0` on the window (the evolute is a straight line).
    pub degenerate: bool,
}

/// `β(s) = α(s) + (c − s) α'(s)` for a unit-speed `α`, on `count` samples.
pub fn involute(alpha: &CurveSpec, c: f64, count: usize) -> Result<Involute> {
    require_euclid(alpha)?;
    let (a, b) = alpha.range();
    if c >= a && c <= b {
        return Err(Error::CuspOnWindow { s: c });
    }
    let grid = alpha.discretize(count)?;
    let deviation = grid
        .d1
        .iter()
        .map(|d| (d.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    if deviation > 1e-6 {
        return Err(Error::NotUnitSpeed { deviation });
    }
    let points = grid
        .ts
        .iter()
        .zip(grid.points.iter().zip(&grid.d1))
        .map(|(s, (p, d))| p + d * (c - s))
        .collect();
    // β' = (c − s) α''
    let degenerate = grid
        .ts
        .iter()
        .zip(&grid.d2)
        .all(|(s, dd)| (dd * (c - s)).norm() <= alpha.eps_reg());
    let curve = CurveSpec::sampled(alpha.ambient(), grid.ts, points)?.with_eps_reg(alpha.eps_reg());
    Ok(Involute { curve, degenerate })
}

/// The field `N = (β − α)/‖β − α‖` along `β`, on `count` parameters of
/// `β`'s window, together with its RM residual
/// `‖N' − ⟨N', T_β⟩T_β‖ / ‖β'‖`.
///
/// When `α` is an evolute of `β` the residual vanishes.
pub fn evolute_normal_field(
    alpha: &CurveSpec,
    beta: &CurveSpec,
    count: usize,
) -> Result<(NormalField, ResidualReport)> {
    require_euclid(alpha)?;
    require_euclid(beta)?;
    let ts = beta.grid(count);
    let mut samples = Vec::with_capacity(count);
    for &t in &ts {
        let diff = beta.evaluate(t, 0)? - alpha.evaluate(t, 0)?;
        let dist = diff.norm();
        if dist <= beta.eps_reg() {
            return Err(Error::CoincidentCurves { t });
        }
        samples.push((t, diff / dist));
    }
    let field = NormalField::new(beta.clone(), samples)?;
    let dn = finite_diff(&ts, &field.vectors(), 1)?;
    let mut per_sample = Vec::with_capacity(count);
    for (&t, dn) in ts.iter().zip(&dn) {
        let db = to_vec3(&beta.evaluate(t, 1)?);
        let speed = db.norm();
        let tangent = db / speed;
        let dn = to_vec3(dn);
        let normal_part = dn - tangent * dn.dot(&tangent);
        per_sample.push((t, normal_part.norm() / speed));
    }
    Ok((field, ResidualReport::from_samples(per_sample)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Family;
    use crate::{from_vec3, ManifoldId, Vec3, Vector};
    use std::f64::consts::PI;

    fn curve(family: Family, range: (f64, f64)) -> CurveSpec {
        CurveSpec::analytic(ManifoldId::Euclid3, family, range).unwrap()
    }

    fn unit_circle(range: (f64, f64)) -> CurveSpec {
        curve(
            Family::Circle {
                center: vec![0.0; 3],
                radius: 1.0,
                omega: 1.0,
            },
            range,
        )
    }

    fn unit_helix() -> CurveSpec {
        curve(
            Family::Helix {
                a: 1.0,
                b: 1.0,
                z0: 0.0,
            },
            (0.0, 20.0),
        )
        .unit_speed()
        .unwrap()
    }

    #[test]
    fn circle_involute_distance() {
        let c = 2.0 * PI;
        let alpha = unit_circle((0.0, 6.0));
        let inv = involute(&alpha, c, 200).unwrap();
        assert!(!inv.degenerate);
        let s = inv.curve.samples().unwrap();
        for (t, p) in s.ts.iter().zip(&s.points) {
            let d = (p - alpha.evaluate(*t, 0).unwrap()).norm();
            assert!((d - (c - t).abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn cusp_on_window() {
        let alpha = unit_circle((0.0, 2.0 * PI));
        assert!(matches!(
            involute(&alpha, 1.0, 50),
            Err(Error::CuspOnWindow { .. })
        ));
    }

    #[test]
    fn requires_unit_speed() {
        let alpha = curve(
            Family::Helix {
                a: 1.0,
                b: 1.0,
                z0: 0.0,
            },
            (0.0, 2.0),
        );
        assert!(matches!(
            involute(&alpha, 5.0, 50),
            Err(Error::NotUnitSpeed { .. })
        ));
    }

    #[test]
    fn line_involute_is_degenerate() {
        let alpha = curve(
            Family::Line {
                point: vec![0.0; 3],
                direction: vec![0.0, 1.0, 0.0],
            },
            (0.0, 1.0),
        );
        let inv = involute(&alpha, 3.0, 20).unwrap();
        assert!(inv.degenerate);
        let s = inv.curve.samples().unwrap();
        assert!(s
            .points
            .iter()
            .all(|p| (p - Vector::from_vec(vec![0.0, 3.0, 0.0])).norm() < 1e-15));
    }

    #[test]
    fn helix_involute_meets_tangents_orthogonally() {
        let alpha = unit_helix();
        let inv = involute(&alpha, 30.0, 2001).unwrap();
        // β' = (c − s) α'' exactly; compare the sampled β' with α'
        for t in inv.curve.grid(101) {
            let db = inv.curve.evaluate(t, 1).unwrap();
            let da = alpha.evaluate(t, 1).unwrap();
            assert!(db.dot(&da).abs() / db.norm() < 1e-7, "t={t}");
        }
    }

    #[test]
    fn involute_pair_gives_rm_field() {
        let alpha = unit_helix();
        let inv = involute(&alpha, 30.0, 2001).unwrap();
        let (field, report) = evolute_normal_field(&alpha, &inv.curve, 2001).unwrap();
        assert!(report.max_abs < 1e-6, "{}", report.max_abs);
        let (tangential, unit) = field.normality().unwrap();
        assert!(tangential < 1e-6 && unit < 1e-12);
    }

    #[test]
    fn ellipse_and_its_evolute() {
        let (a, b) = (3.0, 2.0);
        let beta = curve(
            Family::Ellipse {
                center: vec![0.0; 3],
                a,
                b,
            },
            (0.1, 1.4),
        );
        let ts = beta.grid(801);
        let pts = ts
            .iter()
            .map(|t| {
                let e = (a * a - b * b) / a;
                let f = (b * b - a * a) / b;
                Vector::from_vec(vec![e * t.cos().powi(3), f * t.sin().powi(3), 0.0])
            })
            .collect();
        let alpha = CurveSpec::sampled(ManifoldId::Euclid3, ts, pts).unwrap();
        let (_, report) = evolute_normal_field(&alpha, &beta, 801).unwrap();
        assert!(report.max_abs < 1e-5, "{}", report.max_abs);
    }

    #[test]
    fn rotating_offset_is_not_rm() {
        // β = α + r (cos ωs n(s) + sin ωs e_z), n the outward normal of the circle
        let (r, w) = (0.5, 1.0);
        let alpha = unit_circle((0.0, 3.0));
        let ts = alpha.grid(601);
        let pts = ts
            .iter()
            .map(|&s| {
                let n = Vec3::new(s.cos(), s.sin(), 0.0);
                let off = (n * (w * s).cos() + Vec3::z() * (w * s).sin()) * r;
                alpha.evaluate(s, 0).unwrap() + from_vec3(&off)
            })
            .collect();
        let beta = CurveSpec::sampled(ManifoldId::Euclid3, ts, pts).unwrap();
        let (_, report) = evolute_normal_field(&alpha, &beta, 601).unwrap();
        assert!(report.max_abs > 0.1, "{}", report.max_abs);
    }

    #[test]
    fn coincident_curves() {
        let alpha = unit_circle((0.0, 1.0));
        assert!(matches!(
            evolute_normal_field(&alpha, &alpha, 10),
            Err(Error::CoincidentCurves { .. })
        ));
    }
}
