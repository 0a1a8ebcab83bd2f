//! JSON encoding of [`CurveSpec`].
//!
//! ```json
//! {"ambient": "euclid3" | "hyp3" | "complex", "complex_dim": n,
//!  "kind": "analytic" | "sampled", "family": "helix", "params": {"a": 1, "b": 1},
//!  "range": [t0, t1], "samples": [[x, y, z], ...], "ts": [t, ...]}
//! ```
//!
//! `unit_speed: true` reparametrizes a constant-speed analytic curve to unit
//! ambient speed after loading.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curve::{CurveKind, CurveSpec, Family};
use crate::error::{Error, Result};
use crate::manifold::ManifoldId;
use crate::Vector;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpecJson {
    pub ambient: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_dim: Option<usize>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ts: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unit_speed: bool,
}

pub fn parse_ambient(name: &str, complex_dim: Option<usize>) -> Result<ManifoldId> {
    match name {
        "euclid3" => Ok(ManifoldId::Euclid3),
        "hyp3" => Ok(ManifoldId::HypHalfSpace3),
        "complex" => Ok(ManifoldId::FlatComplex(complex_dim.unwrap_or(1))),
        other => Err(Error::InvalidInput(format!("unknown ambient '{other}'"))),
    }
}

impl CurveSpecJson {
    pub fn into_curve(self) -> Result<CurveSpec> {
        let ambient = parse_ambient(&self.ambient, self.complex_dim)?;
        let curve = match self.kind.as_str() {
            "analytic" => {
                let name = self
                    .family
                    .ok_or_else(|| Error::InvalidInput("analytic curve needs 'family'".into()))?;
                let params = self.params.unwrap_or_else(|| json!({}));
                let family: Family =
                    serde_json::from_value(json!({"family": name, "params": params}))
                        .map_err(|e| Error::InvalidInput(format!("family '{name}': {e}")))?;
                let [a, b] = self
                    .range
                    .ok_or_else(|| Error::InvalidInput("analytic curve needs 'range'".into()))?;
                CurveSpec::analytic(ambient, family, (a, b))?
            }
            "sampled" => {
                let samples = self
                    .samples
                    .ok_or_else(|| Error::InvalidInput("sampled curve needs 'samples'".into()))?;
                let ts = match self.ts {
                    Some(ts) => ts,
                    None => {
                        // default to an index grid, optionally stretched over 'range'
                        let n = samples.len().max(2);
                        let [a, b] = self.range.unwrap_or([0.0, (n - 1) as f64]);
                        crate::curve::uniform_grid(a, b, n)
                    }
                };
                let points = samples.into_iter().map(Vector::from_vec).collect();
                CurveSpec::sampled(ambient, ts, points)?
            }
            other => return Err(Error::InvalidInput(format!("unknown curve kind '{other}'"))),
        };
        if self.unit_speed {
            curve.unit_speed()
        } else {
            Ok(curve)
        }
    }

    pub fn from_curve(curve: &CurveSpec) -> Self {
        let ambient = curve.ambient();
        let complex_dim = match ambient {
            ManifoldId::FlatComplex(n) => Some(n),
            _ => None,
        };
        let (a, b) = curve.range();
        match curve.kind() {
            CurveKind::Analytic { family, time_scale } => {
                let tagged = serde_json::to_value(family).expect("family serializes");
                let unit_speed = *time_scale != 1.0;
                CurveSpecJson {
                    ambient: ambient.schema_name().into(),
                    complex_dim,
                    kind: "analytic".into(),
                    family: Some(family.name().into()),
                    params: tagged.get("params").cloned(),
                    range: Some(if unit_speed {
                        [a * time_scale, b * time_scale]
                    } else {
                        [a, b]
                    }),
                    samples: None,
                    ts: None,
                    unit_speed,
                }
            }
            CurveKind::Sampled(s) => CurveSpecJson {
                ambient: ambient.schema_name().into(),
                complex_dim,
                kind: "sampled".into(),
                family: None,
                params: None,
                range: Some([a, b]),
                samples: Some(s.points.iter().map(|p| p.as_slice().to_vec()).collect()),
                ts: Some(s.ts.clone()),
                unit_speed: false,
            },
        }
    }
}

/// Parses a curve from its JSON text.
pub fn parse_curve(text: &str) -> Result<CurveSpec> {
    let raw: CurveSpecJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("curve JSON: {e}")))?;
    raw.into_curve()
}

pub fn curve_to_json(curve: &CurveSpec) -> String {
    serde_json::to_string_pretty(&CurveSpecJson::from_curve(curve)).expect("curve serializes")
}
