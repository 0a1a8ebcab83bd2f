//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI, SQRT_2};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rmf_core::euclid3::{
    default_normal, developability_residual, frenet_from_natural, rmf_transport, spherical_test,
    SphericalVerdict, TransportMode,
};
use rmf_core::hyp3::{
    developability_residual_hyp, evolute_rm_field_hyp, geodesic, geodesic_ode, hyp_norm,
    involute_hyp, rm_transport_hyp, HypPoint,
};
use rmf_core::kaehler::{
    circle_params, constant_speed_check, magnetic_integrate, rm_j_test, ComplexStructure,
    MagneticField,
};
use rmf_core::{
    CurveSpec, Family, ManifoldId, NormalField, ResidualReport, Tolerances, Vec3, Vector,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn euclid(family: Family, range: (f64, f64)) -> CurveSpec {
    CurveSpec::analytic(ManifoldId::Euclid3, family, range).unwrap()
}

fn hyp(family: Family, range: (f64, f64)) -> CurveSpec {
    CurveSpec::analytic(ManifoldId::HypHalfSpace3, family, range).unwrap()
}

fn helix() -> CurveSpec {
    euclid(
        Family::Helix {
            a: 1.0,
            b: 1.0,
            z0: 0.0,
        },
        (0.0, 4.0 * PI),
    )
}

fn horizontal_circle() -> CurveSpec {
    hyp(
        Family::Circle {
            center: vec![0.0, 0.0, 1.0],
            radius: 1.0,
            omega: 1.0,
        },
        (0.0, 2.0 * PI),
    )
}

/// `cos(rate·t) N_1 + sin(rate·t) N_2`: a normal field turning about the tangent.
fn rotating(curve: &CurveSpec, ts: &[f64], n1: &[Vec3], n2: &[Vec3], rate: f64) -> NormalField {
    let samples = ts
        .iter()
        .zip(n1.iter().zip(n2))
        .map(|(t, (a, b))| {
            let (s, c) = (rate * t).sin_cos();
            (*t, Vector::from_column_slice((a * c + b * s).as_slice()))
        })
        .collect();
    NormalField::new(curve.clone(), samples).unwrap()
}

fn log_spiral_curvature() -> Outcome {
    let start = Instant::now();
    let curve = CurveSpec::analytic(
        ManifoldId::FlatComplex(1),
        Family::LogSpiralNatural {},
        (0.1, 5.0),
    )
    .unwrap();
    let report = rm_j_test(&curve, 2000, Tolerances::default().rm_j).unwrap();
    let error = report
        .kappa1
        .iter()
        .map(|(s, k)| (k + 1.0 / (s + SQRT_2)).abs())
        .fold(0.0, f64::max);
    let mirrored = report
        .kappa1
        .iter()
        .map(|(s, k)| (k - 1.0 / (s + SQRT_2)).abs())
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    outcome(
        report.is_rm && error < 1e-6 && elapsed < Duration::from_secs(1),
        format!(
            "is_rm={}, max |k1 + 1/(s+sqrt2)| = {error:.3e}, max |k1 - 1/(s+sqrt2)| = {mirrored:.3e}",
            report.is_rm
        ),
    )
}

fn curvature_identity() -> Outcome {
    let sol = rmf_transport(&helix(), &Vec3::x(), 2000, TransportMode::Stabilized).unwrap();
    let kappa_error = sol
        .curvatures
        .samples
        .iter()
        .map(|(_, k)| (k[0].hypot(k[1]) - 0.5).abs())
        .fold(0.0, f64::max);
    let recovered = frenet_from_natural(&sol.development()).unwrap();
    let tau_error = recovered
        .iter()
        .map(|c| c.tau.map_or(f64::INFINITY, |tau| (tau - 0.5).abs()))
        .fold(0.0, f64::max);
    outcome(
        kappa_error < 1e-6 && tau_error < 1e-5,
        format!("max |kappa - 1/2| = {kappa_error:.3e}, max |tau - 1/2| = {tau_error:.3e}"),
    )
}

/// Smallest per-sample residual: a witness must stay above the bar everywhere.
fn min_residual(report: &ResidualReport) -> f64 {
    report
        .per_sample
        .iter()
        .map(|(_, r)| *r)
        .fold(f64::INFINITY, f64::min)
}

fn developability_iff_rm() -> Outcome {
    let start = Instant::now();
    let c = helix();
    let sol = rmf_transport(&c, &Vec3::x(), 2000, TransportMode::Stabilized).unwrap();
    let rm = developability_residual(&c, &sol.field).unwrap().max_abs;
    let witness = rotating(&c, &sol.ts, &sol.n1, &sol.n2, 1.0);
    let non_rm = min_residual(&developability_residual(&c, &witness).unwrap());

    let h = horizontal_circle();
    let hsol = rm_transport_hyp(&h, &Vec3::z(), 2000).unwrap();
    let hyp_rm = developability_residual_hyp(&h, &hsol.field)
        .unwrap()
        .max_abs;
    let hwitness = rotating(&h, &hsol.ts, &hsol.n1, &hsol.n2, 1.0);
    let hyp_non_rm = min_residual(&developability_residual_hyp(&h, &hwitness).unwrap());
    let elapsed = start.elapsed();
    outcome(
        rm < 1e-6 && non_rm > 0.05 && hyp_rm < 1e-6 && hyp_non_rm > 0.05 && elapsed < Duration::from_secs(5),
        format!(
            "R3: rm {rm:.3e}, witness min {non_rm:.3}; H3: rm {hyp_rm:.3e}, witness min {hyp_non_rm:.3}; runtime {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn spherical_characterization() -> Outcome {
    let tol = Tolerances::default();
    let sphere = euclid(
        Family::Spherical {
            radius: 2.0,
            amplitude: 0.6,
            frequency: 3.0,
        },
        (0.0, 2.0 * PI),
    );
    let rep = spherical_test(&sphere, 4000, &tol).unwrap();
    let ellipse = euclid(
        Family::Ellipse {
            center: vec![0.0; 3],
            a: 3.0,
            b: 1.5,
        },
        (0.0, 2.0 * PI),
    );
    let plane = spherical_test(&ellipse, 4000, &tol).unwrap();
    outcome(
        (rep.line.offset - 0.5).abs() < 1e-3
            && (rep.radius_estimate - 2.0).abs() < 5e-3
            && rep.verdict == SphericalVerdict::Spherical
            && plane.verdict == SphericalVerdict::Plane,
        format!(
            "sphere: d = {:.9}, R = {:.9}, {:?}; ellipse: |d| = {:.3e}, {:?}",
            rep.line.offset, rep.radius_estimate, rep.verdict, plane.line.offset, plane.verdict
        ),
    )
}

fn geodesic_cross_validation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20);
    let (mut position, mut closed_speed, mut ode_speed) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..20 {
        let p = HypPoint::new(
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(0.2..3.0),
        )
        .unwrap();
        let v = loop {
            let v = Vec3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            if v.norm() > 0.1 {
                break v;
            }
        };
        for i in 0..=12 {
            let lambda = -3.0 + 0.5 * i as f64;
            let (x, dx) = geodesic(&p, &v, lambda).unwrap();
            let (y, dy) = geodesic_ode(&p, &v, lambda, 4000).unwrap();
            position = position.max((x - y).norm() / x.norm().max(1.0));
            closed_speed =
                closed_speed.max((hyp_norm(&HypPoint::from_vec3(&x).unwrap(), &dx) - 1.0).abs());
            ode_speed =
                ode_speed.max((hyp_norm(&HypPoint::from_vec3(&y).unwrap(), &dy) - 1.0).abs());
        }
    }
    outcome(
        position < 1e-8 && closed_speed < 1e-10 && ode_speed < 1e-7,
        format!("max disagreement {position:.3e}, speed drift closed form {closed_speed:.3e}, ODE {ode_speed:.3e}"),
    )
}

fn hyperbolic_involute() -> Outcome {
    let alpha = horizontal_circle();
    let c = 10.0;
    let inv = involute_hyp(&alpha, c, 2000).unwrap();
    let lambda_error = inv
        .lambda
        .iter()
        .map(|(s, l)| (l - (c - s)).abs())
        .fold(0.0, f64::max);
    let (_, rm) = evolute_rm_field_hyp(&inv).unwrap();
    outcome(
        inv.orthogonality.max_abs < 1e-6 && lambda_error < 1e-6 && rm.max_abs < 1e-5,
        format!(
            "orthogonality {:.3e}, max |lambda - (c - s)| = {lambda_error:.3e}, evolute RM residual {:.3e}",
            inv.orthogonality.max_abs, rm.max_abs
        ),
    )
}

fn magnetic_circles() -> Outcome {
    let curve = magnetic_integrate(
        1,
        &[0.0, 0.0],
        &[1.0, 0.0],
        &MagneticField::Constant(2.0),
        (0.0, PI),
        2000,
    )
    .unwrap();
    let gap = (curve.evaluate(PI, 0).unwrap() - curve.evaluate(0.0, 0).unwrap()).norm();
    let fit = circle_params(&curve, 0).unwrap();
    let speed = constant_speed_check(&curve, 0, 1e-7).unwrap();
    outcome(
        gap < 1e-6 && (fit.radius - 0.5).abs() < 1e-6 && speed.max_relative_variation < 1e-7,
        format!(
            "closure gap {gap:.3e}, radius {:.12}, speed variation {:.3e}",
            fit.radius, speed.max_relative_variation
        ),
    )
}

fn c2_planarity() -> Outcome {
    let j = ComplexStructure::new(2).unwrap();
    let mut off_plane = 0.0_f64;
    for (p0, v0, k) in [
        ([0.3, -1.0, 2.0, 0.5], [0.2, 0.7, -0.4, 0.1], 1.0),
        ([0.0; 4], [1.0, 0.0, 0.0, 1.0], -2.5),
        ([1.0, 1.0, 1.0, 1.0], [0.0, 0.3, 0.9, -0.2], 0.4),
    ] {
        let curve =
            magnetic_integrate(2, &p0, &v0, &MagneticField::Constant(k), (0.0, 8.0), 4000).unwrap();
        let v = Vector::from_column_slice(&v0);
        let e1 = &v / v.norm();
        let e2 = j.apply(e1.as_slice()).unwrap();
        let p = Vector::from_column_slice(&p0);
        for q in &curve.samples().unwrap().points {
            let d: Vector = q - &p;
            let off = &d - &e1 * d.dot(&e1) - &e2 * d.dot(&e2);
            off_plane = off_plane.max(off.norm());
        }
    }
    let remark = CurveSpec::analytic(
        ManifoldId::FlatComplex(2),
        Family::Circle {
            center: vec![0.0; 4],
            radius: 1.0,
            omega: 1.0,
        },
        (0.0, 2.0 * PI),
    )
    .unwrap();
    let report = rm_j_test(&remark, 500, Tolerances::default().rm_j).unwrap();
    outcome(
        off_plane < 1e-6 && !report.is_rm,
        format!(
            "max off-plane {off_plane:.3e}; (cos s, sin s, 0, 0): is_rm={}, residual {:.3}",
            report.is_rm, report.residual.max_abs
        ),
    )
}

fn frame_uniqueness() -> Outcome {
    let mut worst = (0.0_f64, 0.0_f64);
    let c = helix();
    let base = rmf_transport(&c, &Vec3::x(), 2000, TransportMode::Stabilized).unwrap();
    let h = hyp(
        Family::Helix {
            a: 1.0,
            b: 0.3,
            z0: 1.0,
        },
        (0.0, 6.0),
    );
    let hbase = rm_transport_hyp(&h, &default_normal(&Vec3::new(0.0, 1.0, 0.3)), 2000).unwrap();
    for phi in [FRAC_PI_6, FRAC_PI_3, FRAC_PI_2] {
        let (s, co) = phi.sin_cos();
        let other = rmf_transport(
            &c,
            &(base.n1[0] * co + base.n2[0] * s),
            2000,
            TransportMode::Stabilized,
        )
        .unwrap();
        for (a, b) in base.n1.iter().zip(&other.n1) {
            worst.0 = worst.0.max((a.dot(b).clamp(-1.0, 1.0).acos() - phi).abs());
        }
        let hother = rm_transport_hyp(&h, &(hbase.n1[0] * co + hbase.n2[0] * s), 2000).unwrap();
        for ((a, b), p) in hbase.n1.iter().zip(&hother.n1).zip(&hbase.points) {
            let cos = a.dot(b) / (p.z * p.z);
            worst.1 = worst.1.max((cos.clamp(-1.0, 1.0).acos() - phi).abs());
        }
    }
    outcome(
        worst.0 < 1e-7 && worst.1 < 1e-7,
        format!("max angle drift R3 {:.3e}, H3 {:.3e}", worst.0, worst.1),
    )
}

fn convergence_order() -> Outcome {
    let c = helix();
    let end = |steps: usize| {
        let sol = rmf_transport(&c, &Vec3::x(), steps, TransportMode::Raw).unwrap();
        *sol.n1.last().unwrap()
    };
    let coarse = 64;
    let oracle = end(10 * 2 * coarse);
    let e1 = (end(coarse) - oracle).norm();
    let e2 = (end(2 * coarse) - oracle).norm();
    let ratio = e1 / e2;
    outcome(
        (8.0..=32.0).contains(&ratio),
        format!("errors {e1:.3e} -> {e2:.3e}, ratio {ratio:.2}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("log-spiral natural curvature", log_spiral_curvature),
        ("curvature identity", curvature_identity),
        ("developability iff RM", developability_iff_rm),
        ("spherical characterization", spherical_characterization),
        (
            "hyperbolic geodesic cross-validation",
            geodesic_cross_validation,
        ),
        ("hyperbolic involute/evolute", hyperbolic_involute),
        ("magnetic circles", magnetic_circles),
        ("C2 planarity and counterexample", c2_planarity),
        ("frame uniqueness", frame_uniqueness),
        ("convergence order", convergence_order),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {verdict} {name}: {} [{:.2} s]",
            i + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
