use std::fs;

use rmf_core::euclid3::{
    default_normal, developability_residual, evolute_normal_field, frenet,
    involute as euclid_involute, mesh_plane_residual, rm_residual, rmf_transport, ruled_surface,
    spherical_test, SphericalVerdict, TransportMode,
};
use rmf_core::hyp3::{
    developability_residual_hyp, evolute_rm_field_hyp, involute_hyp, mesh_plane_residual_hyp,
    rm_residual_hyp, rm_transport_hyp, ruled_surface_hyp, tangential_surface_hyp,
};
use rmf_core::json::CurveSpecJson;
use rmf_core::kaehler::{
    analytic_planar_test, constant_speed_check, magnetic_integrate, rm_j_test, MagneticField,
};
use rmf_core::{
    CurveSpec, ManifoldId, NormalField, ResidualReport, SurfaceMesh, Tolerances, Vec3, Vector,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::output::{
    read_input, sidecar, to_json, write_output, CmdResult, Failure, Status, Table,
};
use crate::{Ambient, CheckKind, FieldSource, Options};

const DEFAULT_TOL: f64 = 1e-6;
const DEFAULT_TOL_J: f64 = 1e-5;

fn load_curve(opts: &Options) -> Result<CurveSpec, Failure> {
    let text = read_input(opts.input.as_deref())?;
    let mut spec: CurveSpecJson =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("curve JSON: {e}")))?;
    if let Some(ambient) = opts.ambient {
        spec.ambient = match ambient {
            Ambient::Euclid3 => "euclid3",
            Ambient::Hyp3 => "hyp3",
            Ambient::Complex => "complex",
        }
        .into();
    }
    Ok(spec.into_curve()?)
}

fn samples(opts: &Options) -> usize {
    opts.steps as usize + 1
}

fn v3(v: &Vector) -> Vec3 {
    Vec3::new(v[0], v[1], v[2])
}

fn unit_tangent(curve: &CurveSpec, t: f64) -> Result<Vec3, Failure> {
    let d1 = v3(&curve.evaluate(t, 1)?);
    let p = curve.evaluate(t, 0)?;
    Ok(d1 / curve.ambient().norm(p.as_slice(), d1.as_slice()))
}

fn start_normal(curve: &CurveSpec) -> Result<Vec3, Failure> {
    Ok(default_normal(&unit_tangent(curve, curve.range().0)?))
}

fn residual_json(r: &ResidualReport) -> Value {
    json!({"max_abs": r.max_abs, "rms": r.rms})
}

/// A normal field from the `--field` source on `count` parameters.
fn build_field(
    curve: &CurveSpec,
    source: &FieldSource,
    count: usize,
) -> Result<NormalField, Failure> {
    let hyp = match curve.ambient() {
        ManifoldId::Euclid3 => false,
        ManifoldId::HypHalfSpace3 => true,
        other => {
            return Err(Failure::Input(format!(
                "normal fields need euclid3 or hyp3, got {}",
                other.schema_name()
            )))
        }
    };
    let field = match source {
        FieldSource::Rmf if hyp => rm_transport_hyp(curve, &start_normal(curve)?, count - 1)?.field,
        FieldSource::Rmf => {
            rmf_transport(
                curve,
                &start_normal(curve)?,
                count - 1,
                TransportMode::Stabilized,
            )?
            .field
        }
        FieldSource::Frenet if hyp => {
            return Err(Failure::Input(
                "the frenet field is only available in euclid3".into(),
            ))
        }
        FieldSource::Frenet => {
            let apparatus = frenet(curve, count)?;
            let samples = apparatus
                .samples
                .iter()
                .map(|s| match s.normal {
                    Some(n) => Ok((s.t, Vector::from_column_slice(n.as_slice()))),
                    None => Err(rmf_core::Error::FrenetUndefined { t: s.t }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            NormalField::new(curve.clone(), samples)?
        }
        FieldSource::Tangent => {
            let samples = curve
                .grid(count)
                .into_iter()
                .map(|t| {
                    Ok((
                        t,
                        Vector::from_column_slice(unit_tangent(curve, t)?.as_slice()),
                    ))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            NormalField::new(curve.clone(), samples)?
        }
        FieldSource::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let table = Table::parse(&text)?;
            let cols = ["t", "n1x", "n1y", "n1z"]
                .iter()
                .map(|c| table.column(c))
                .collect::<Result<Vec<_>, _>>()?;
            let samples = table
                .rows
                .iter()
                .map(|r| {
                    (
                        r[cols[0]],
                        Vector::from_vec(vec![r[cols[1]], r[cols[2]], r[cols[3]]]),
                    )
                })
                .collect();
            NormalField::new(curve.clone(), samples)?
        }
    };
    Ok(field)
}

fn developability(curve: &CurveSpec, field: &NormalField) -> Result<ResidualReport, Failure> {
    Ok(match curve.ambient() {
        ManifoldId::HypHalfSpace3 => developability_residual_hyp(curve, field)?,
        _ => developability_residual(curve, field)?,
    })
}

fn rm(curve: &CurveSpec, field: &NormalField) -> Result<ResidualReport, Failure> {
    Ok(match curve.ambient() {
        ManifoldId::HypHalfSpace3 => rm_residual_hyp(curve, field)?,
        _ => rm_residual(curve, field)?,
    })
}

pub fn frames(opts: &Options) -> CmdResult {
    let curve = load_curve(opts)?;
    let steps = opts.steps as usize;
    let (ts, points, tangents, n1, n2, curvatures) = match curve.ambient() {
        ManifoldId::Euclid3 => {
            let s = rmf_transport(
                &curve,
                &start_normal(&curve)?,
                steps,
                TransportMode::Stabilized,
            )?;
            (s.ts, s.points, s.tangents, s.n1, s.n2, s.curvatures)
        }
        ManifoldId::HypHalfSpace3 => {
            let s = rm_transport_hyp(&curve, &start_normal(&curve)?, steps)?;
            (s.ts, s.points, s.tangents, s.n1, s.n2, s.curvatures)
        }
        other => {
            return Err(Failure::Input(format!(
                "frames need euclid3 or hyp3, got {}",
                other.schema_name()
            )))
        }
    };
    let header = "t,x,y,z,tx,ty,tz,n1x,n1y,n1z,n2x,n2y,n2z,kappa1,kappa2";
    let rows = (0..ts.len())
        .map(|i| {
            let mut row = vec![ts[i]];
            for v in [&points[i], &tangents[i], &n1[i], &n2[i]] {
                row.extend_from_slice(v.as_slice());
            }
            row.extend_from_slice(&curvatures.samples[i].1);
            row
        })
        .collect();
    let table = Table {
        header: header.split(',').map(String::from).collect(),
        rows,
    };
    write_output(opts.output.as_deref(), &table.to_bytes())?;
    Ok(Status::Pass)
}

/// Keeps `rows` of the field's samples, evenly spread.
fn subsample(field: &NormalField, rows: usize) -> NormalField {
    let len = field.samples.len();
    if rows >= len {
        return field.clone();
    }
    let samples = (0..rows)
        .map(|i| field.samples[(i * (len - 1) + (rows - 1) / 2) / (rows - 1)].clone())
        .collect();
    NormalField {
        curve: field.curve.clone(),
        samples,
    }
}

pub fn surface(opts: &Options) -> CmdResult {
    let out = opts
        .output
        .as_deref()
        .ok_or_else(|| Failure::Input("surface needs --output".into()))?;
    let curve = load_curve(opts)?;
    let lambda = (opts.lambda_min, opts.lambda_max);
    let (rows, cols) = (opts.grid_rows as usize, opts.grid_cols as usize);
    let hyp = curve.ambient() == ManifoldId::HypHalfSpace3;

    let field = build_field(&curve, &opts.field, samples(opts))?;
    let dev = developability(&curve, &field)?;
    let rm_report = rm(&curve, &field)?;

    let (mut mesh, degenerate): (SurfaceMesh, bool) = match (&opts.field, hyp) {
        (FieldSource::Tangent, true) => {
            let t = tangential_surface_hyp(&curve, lambda, rows, cols)?;
            (t.mesh, t.degenerate)
        }
        (source, _) => {
            let coarse = subsample(&field, rows);
            let mesh = if hyp {
                ruled_surface_hyp(&curve, &coarse, lambda, cols)?
            } else {
                ruled_surface(&curve, &coarse, lambda, cols)?
            };
            // tangent rulings of a line all lie on the line itself
            let degenerate = *source == FieldSource::Tangent
                && curve
                    .grid(rows)
                    .iter()
                    .map(|t| {
                        curve
                            .evaluate(*t, 0)
                            .and_then(|p| Ok((p, curve.evaluate(*t, 1)?)))
                    })
                    .collect::<Result<Vec<_>, _>>()?
                    .windows(2)
                    .all(|w| {
                        let chord = v3(&(&w[1].0 - &w[0].0));
                        chord.cross(&v3(&w[0].1)).norm() <= 1e-10 * chord.norm() * w[0].1.norm()
                    });
            (mesh, degenerate)
        }
    };
    let plane = if hyp {
        mesh_plane_residual_hyp(&mesh)?
    } else {
        mesh_plane_residual(&mesh)?
    };
    if let Some(eps) = opts.clamp_z {
        mesh.clamp_z(eps);
    }

    let mut obj = Vec::new();
    mesh.write_obj(&mut obj)
        .map_err(|e| Failure::Input(format!("writing mesh: {e}")))?;
    write_output(Some(out), &obj)?;
    let report = json!({
        "ambient": curve.ambient().schema_name(),
        "field": field_name(&opts.field),
        "rows": mesh.rows,
        "cols": mesh.cols,
        "lambda_range": [lambda.0, lambda.1],
        "degenerate": degenerate,
        "developability": residual_json(&dev),
        "rm": residual_json(&rm_report),
        "mesh_plane": residual_json(&plane),
    });
    write_output(Some(&sidecar(out)), &to_json(&report))?;
    if degenerate {
        eprintln!(
            "rmframe: warning: degenerate surface (rulings collapse onto one line); mesh written"
        );
        return Ok(Status::Degenerate);
    }
    Ok(Status::Pass)
}

fn field_name(source: &FieldSource) -> String {
    match source {
        FieldSource::Rmf => "rmf".into(),
        FieldSource::Frenet => "frenet".into(),
        FieldSource::Tangent => "tangent".into(),
        FieldSource::File(p) => format!("file:{}", p.display()),
    }
}

fn check_name(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::Rm => "rm",
        CheckKind::RmJ => "rm_j",
        CheckKind::Speed => "speed",
        CheckKind::Planar => "planar",
        CheckKind::Spherical => "spherical",
        CheckKind::Developable => "developable",
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn run_check(curve: &CurveSpec, kind: CheckKind, opts: &Options) -> Result<(bool, Value), Failure> {
    let default = match kind {
        CheckKind::RmJ | CheckKind::Planar => DEFAULT_TOL_J,
        _ => DEFAULT_TOL,
    };
    let tol = opts.tol.unwrap_or(default);
    let count = samples(opts);
    let mut entry = json!({
        "check_name": check_name(kind),
        "parameters": {"tol": tol, "samples": count},
    });
    let pass = match kind {
        CheckKind::Rm | CheckKind::Developable => {
            let field = build_field(curve, &opts.field, count)?;
            let report = if kind == CheckKind::Rm {
                rm(curve, &field)?
            } else {
                developability(curve, &field)?
            };
            entry["parameters"]["field"] = json!(field_name(&opts.field));
            entry["residuals"] = residual_json(&report);
            report.passes(tol)
        }
        CheckKind::RmJ => {
            let report = rm_j_test(curve, count, tol)?;
            entry["residuals"] = residual_json(&report.residual);
            entry["kappa1"] = json!(report.kappa1);
            report.is_rm
        }
        CheckKind::Speed => {
            let report = constant_speed_check(curve, count, tol)?;
            entry["residuals"] = json!({"max_relative_variation": report.max_relative_variation});
            report.is_constant
        }
        CheckKind::Planar => {
            let report = analytic_planar_test(curve, count, tol)?;
            entry["residuals"] = residual_json(&report.residual);
            entry["a"] = json!(report.a);
            entry["b"] = json!(report.b);
            report.is_planar
        }
        CheckKind::Spherical => {
            let tolerances = Tolerances {
                residual: tol,
                ..Tolerances::default()
            };
            let report = spherical_test(curve, opts.steps as usize, &tolerances)?;
            entry["residuals"] = json!({"line_deviation": report.line.max_deviation});
            entry["radius_estimate"] = json!(report.radius_estimate);
            entry["classification"] = json!(report.verdict);
            report.verdict == SphericalVerdict::Spherical
        }
    };
    entry["verdict"] = json!(verdict(pass));
    Ok((pass, entry))
}

pub fn check(opts: &Options) -> CmdResult {
    if opts.check.is_empty() {
        return Err(Failure::Input("check needs at least one --check".into()));
    }
    let curve = load_curve(opts)?;
    let mut all = true;
    let mut checks = Vec::with_capacity(opts.check.len());
    for kind in &opts.check {
        let (pass, entry) = run_check(&curve, *kind, opts)?;
        all &= pass;
        checks.push(entry);
    }
    let report = json!({"checks": checks, "passed": all});
    write_output(opts.output.as_deref(), &to_json(&report))?;
    Ok(if all {
        Status::Pass
    } else {
        Status::CheckFailed
    })
}

pub fn involute(opts: &Options, c: f64) -> CmdResult {
    let alpha = load_curve(opts)?;
    let count = samples(opts);
    let (beta, report, degenerate) = match alpha.ambient() {
        ManifoldId::Euclid3 => {
            let inv = euclid_involute(&alpha, c, count)?;
            let report = if inv.degenerate {
                None
            } else {
                Some(evolute_normal_field(&alpha, &inv.curve, count)?.1)
            };
            (inv.curve, report, inv.degenerate)
        }
        ManifoldId::HypHalfSpace3 => {
            let inv = involute_hyp(&alpha, c, opts.steps as usize)?;
            let report = if inv.degenerate {
                None
            } else {
                Some(evolute_rm_field_hyp(&inv)?.1)
            };
            (inv.curve, report, inv.degenerate)
        }
        other => {
            return Err(Failure::Input(format!(
                "involutes need euclid3 or hyp3, got {}",
                other.schema_name()
            )))
        }
    };
    let curve_json = to_json(&CurveSpecJson::from_curve(&beta));
    let summary = to_json(&json!({
        "c": c,
        "degenerate": degenerate,
        "evolute_rm_residual": report.as_ref().map(residual_json),
    }));
    match opts.output.as_deref() {
        Some(path) => {
            write_output(Some(path), &curve_json)?;
            write_output(None, &summary)?;
        }
        None => {
            write_output(None, &curve_json)?;
            eprint!("{}", String::from_utf8_lossy(&summary));
        }
    }
    if degenerate {
        eprintln!("rmframe: warning: involute is degenerate (the curve is a geodesic)");
        return Ok(Status::Degenerate);
    }
    Ok(Status::Pass)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Strength {
    Constant(f64),
    Table(Vec<[f64; 2]>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MagneticSpec {
    complex_dim: usize,
    p0: Vec<f64>,
    v0: Vec<f64>,
    kappa1: Strength,
    range: [f64; 2],
}

/// Piecewise-linear interpolation, constant beyond the ends.
fn interpolate(table: &[[f64; 2]], t: f64) -> f64 {
    let i = table.partition_point(|p| p[0] <= t);
    if i == 0 {
        return table[0][1];
    }
    if i == table.len() {
        return table[i - 1][1];
    }
    let ([t0, k0], [t1, k1]) = (table[i - 1], table[i]);
    k0 + (k1 - k0) * (t - t0) / (t1 - t0)
}

pub fn magnetic(opts: &Options) -> CmdResult {
    let text = read_input(opts.input.as_deref())?;
    let spec: MagneticSpec =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("magnetic JSON: {e}")))?;
    let field = match spec.kappa1 {
        Strength::Constant(k) => MagneticField::Constant(k),
        Strength::Table(table) => {
            if table.is_empty() || !table.windows(2).all(|w| w[1][0] > w[0][0]) {
                return Err(Failure::Input(
                    "kappa1 table needs increasing parameters".into(),
                ));
            }
            MagneticField::function(move |t| interpolate(&table, t))
        }
    };
    let curve = magnetic_integrate(
        spec.complex_dim,
        &spec.p0,
        &spec.v0,
        &field,
        (spec.range[0], spec.range[1]),
        opts.steps as usize,
    )?;
    write_output(
        opts.output.as_deref(),
        &to_json(&CurveSpecJson::from_curve(&curve)),
    )?;
    Ok(Status::Pass)
}

pub fn spherical(opts: &Options) -> CmdResult {
    let curve = load_curve(opts)?;
    let tolerances = Tolerances {
        residual: opts.tol.unwrap_or(DEFAULT_TOL),
        ..Tolerances::default()
    };
    let report = spherical_test(&curve, opts.steps as usize, &tolerances)?;
    write_output(opts.output.as_deref(), &to_json(&report))?;
    Ok(Status::Pass)
}
