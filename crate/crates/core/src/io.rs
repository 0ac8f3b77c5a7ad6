//! JSON file formats.
//!
//! State: `{ "qubits": m, "amplitudes": [[re, im], ...], "normalize": bool }`
//! where `normalize` is optional and defaults to `true`.
//!
//! Factors: `{ "factors": [[[re, im], [re, im]], ...] }`, first entry is the
//! most significant qubit.
//!
//! Projective point: `{ "coords": [[re, im], ...] }`.
//!
//! Polytope: `{ "vertices": [[int, ...], ...] }`.
//!
//! Report: `{ "qubits", "separable", "max_residual", "factors" | null,
//! "moment_image" | null, "measures": { name: value | [re, im] }, "tolerance" }`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::analyze::{AnalysisReport, MeasureValue};
use crate::error::{Error, Result};
use crate::state::{MultiQubitState, ProjectivePoint, QubitFactor};
use crate::toric::LatticePolytope;

pub(crate) fn serialize_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Json(e.to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalize: Option<bool>,
}

impl StateFile {
    pub fn from_state(s: &MultiQubitState) -> Self {
        StateFile {
            qubits: s.num_qubits(),
            amplitudes: s.amplitudes().iter().copied().map(pair).collect(),
            normalize: Some(false),
        }
    }

    pub fn into_state(self) -> Result<MultiQubitState> {
        let amps = self.amplitudes.into_iter().map(complex).collect();
        MultiQubitState::new(self.qubits, amps, self.normalize.unwrap_or(true))
    }
}

pub fn parse_state(text: &str) -> Result<MultiQubitState> {
    let file: StateFile = serde_json::from_str(text).map_err(json_err)?;
    file.into_state()
}

pub fn state_to_json(s: &MultiQubitState) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(s)).expect("plain data serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorsFile {
    pub factors: Vec<[[f64; 2]; 2]>,
}

pub fn parse_factors(text: &str) -> Result<Vec<QubitFactor>> {
    let file: FactorsFile = serde_json::from_str(text).map_err(json_err)?;
    file.factors
        .into_iter()
        .map(|[a0, a1]| QubitFactor::new(complex(a0), complex(a1)))
        .collect()
}

pub fn factors_to_json(factors: &[QubitFactor]) -> String {
    let file = FactorsFile {
        factors: factors.iter().map(|f| [pair(f.a0()), pair(f.a1())]).collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    coords: Vec<[f64; 2]>,
}

pub fn parse_projective_point(text: &str) -> Result<ProjectivePoint> {
    let file: PointFile = serde_json::from_str(text).map_err(json_err)?;
    ProjectivePoint::new(file.coords.into_iter().map(complex).collect())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    vertices: Vec<Vec<i64>>,
}

pub fn parse_polytope(text: &str) -> Result<LatticePolytope> {
    let file: PolytopeFile = serde_json::from_str(text).map_err(json_err)?;
    let dim = file.vertices.first().map_or(0, |v| v.len());
    LatticePolytope::new(dim, file.vertices)
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
enum MeasureJson {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Debug, Clone, Serialize)]
struct ReportJson {
    qubits: usize,
    separable: bool,
    max_residual: f64,
    factors: Option<Vec<[[f64; 2]; 2]>>,
    moment_image: Option<Vec<f64>>,
    measures: BTreeMap<String, MeasureJson>,
    tolerance: f64,
}

pub fn report_to_value(r: &AnalysisReport) -> Value {
    let json = ReportJson {
        qubits: r.num_qubits,
        separable: r.separable,
        max_residual: r.max_residual,
        factors: r
            .factors
            .as_ref()
            .map(|fs| fs.iter().map(|f| [pair(f.a0()), pair(f.a1())]).collect()),
        moment_image: r.moment_image.as_ref().map(|m| m.coords().to_vec()),
        measures: r
            .measures
            .iter()
            .map(|(k, v)| {
                let j = match v {
                    MeasureValue::Real(x) => MeasureJson::Real(*x),
                    MeasureValue::Complex(z) => MeasureJson::Complex(pair(*z)),
                };
                (k.clone(), j)
            })
            .collect(),
        tolerance: r.tolerance,
    };
    serde_json::to_value(json).expect("finite report serializes")
}

pub fn report_to_json(r: &AnalysisReport) -> String {
    serde_json::to_string_pretty(&report_to_value(r)).expect("value serializes")
}
