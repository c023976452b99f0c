//! JSON formats for structures, tensors and Lie algebra models, and deterministic output.

use crate::error::{AcmsError, Result};
use crate::geometry::LieAlgebraModel;
use crate::intrinsic::IntrinsicData;
use crate::structure::{validate_structure, Structure};
use crate::tensor::Tensor3;
use indexmap::IndexMap;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Significant digits kept in emitted floats.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureJson {
    pub n: usize,
    pub g: Vec<Vec<f64>>,
    pub phi: Vec<Vec<f64>>,
    pub xi: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorJson {
    pub entries: Vec<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    /// `k ↦ c[i][j][k]`, keys are decimal indices.
    pub coeffs: IndexMap<String, f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelJson {
    pub n: usize,
    pub brackets: Vec<BracketJson>,
    pub structure: StructureJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointJson {
    pub structure: StructureJson,
    #[serde(alias = "alpha")]
    pub tensor: TensorJson,
}

fn matrix(rows: &[Vec<f64>], dim: usize, what: &str) -> Result<DMatrix<f64>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(AcmsError::Dimension(format!("{what} must be {dim}×{dim}")));
    }
    Ok(DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
}

fn vector(v: &[f64], dim: usize, what: &str) -> Result<DVector<f64>> {
    if v.len() != dim {
        return Err(AcmsError::Dimension(format!("{what} must have {dim} entries")));
    }
    Ok(DVector::from_column_slice(v))
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

impl StructureJson {
    /// Builds the structure and rejects it unless every defining identity holds.
    pub fn to_structure(&self) -> Result<Structure> {
        if self.n == 0 {
            return Err(AcmsError::InvalidStructure("n must be at least 1".into()));
        }
        let dim = 2 * self.n + 1;
        let g = matrix(&self.g, dim, "g")?;
        let phi = matrix(&self.phi, dim, "phi")?;
        let xi = vector(&self.xi, dim, "xi")?;
        let eta = self.eta.as_deref().map(|e| vector(e, dim, "eta")).transpose()?;
        let st = Structure::new(self.n, g, phi, xi, eta)?;
        let report = validate_structure(&st);
        if !report.is_ok() {
            let mut names: Vec<String> =
                report.violations.iter().map(|v| format!("{} ({:.2e})", v.identity, v.residual)).collect();
            if !report.metric_positive_definite {
                names.push("g positive definite".into());
            }
            return Err(AcmsError::InvalidStructure(names.join(", ")));
        }
        Ok(st)
    }

    pub fn from_structure(st: &Structure) -> Self {
        Self {
            n: st.n(),
            g: rows(st.g()),
            phi: rows(st.phi()),
            xi: st.xi().iter().copied().collect(),
            eta: Some(st.eta().iter().copied().collect()),
        }
    }
}

impl TensorJson {
    pub fn to_tensor(&self, dim: usize) -> Result<Tensor3> {
        let ok = self.entries.len() == dim && self.entries.iter().all(|m| m.len() == dim && m.iter().all(|r| r.len() == dim));
        if !ok {
            return Err(AcmsError::Dimension(format!("tensor entries must be {dim}×{dim}×{dim}")));
        }
        Ok(Tensor3::from_fn(dim, |i, j, k| self.entries[i][j][k]))
    }

    pub fn from_tensor(t: &Tensor3) -> Self {
        Self { entries: t.to_nested() }
    }
}

impl ModelJson {
    pub fn to_model(&self) -> Result<LieAlgebraModel> {
        if self.structure.n != self.n {
            return Err(AcmsError::Dimension(format!("model n = {} but structure n = {}", self.n, self.structure.n)));
        }
        let st = self.structure.to_structure()?;
        let dim = st.dim();
        let mut c = Tensor3::zeros(dim);
        for b in &self.brackets {
            if b.i >= dim || b.j >= dim {
                return Err(AcmsError::Dimension(format!("bracket index ({}, {}) out of range", b.i, b.j)));
            }
            for (key, &v) in &b.coeffs {
                let k: usize = key
                    .parse()
                    .ok()
                    .filter(|&k| k < dim)
                    .ok_or_else(|| AcmsError::Dimension(format!("coefficient index `{key}` out of range")))?;
                c[(b.i, b.j, k)] = v;
                c[(b.j, b.i, k)] = -v;
            }
        }
        LieAlgebraModel::new(c, st)
    }

    pub fn from_model(m: &LieAlgebraModel) -> Self {
        let dim = m.dim();
        let c = m.constants();
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let coeffs: IndexMap<String, f64> =
                    (0..dim).filter(|&k| c[(i, j, k)] != 0.0).map(|k| (k.to_string(), c[(i, j, k)])).collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketJson { i, j, coeffs });
                }
            }
        }
        Self { n: m.n(), brackets, structure: StructureJson::from_structure(m.structure()) }
    }
}

/// A parsed input file: either a point `(structure, ∇Φ)` or a Lie algebra model.
#[derive(Clone, Debug)]
pub enum Input {
    Point { structure: Structure, alpha: Tensor3 },
    Model(LieAlgebraModel),
}

impl Input {
    pub fn structure(&self) -> &Structure {
        match self {
            Input::Point { structure, .. } => structure,
            Input::Model(m) => m.structure(),
        }
    }

    pub fn alpha(&self) -> Tensor3 {
        match self {
            Input::Point { alpha, .. } => alpha.clone(),
            Input::Model(m) => m.nabla_phi_tensor(),
        }
    }

    pub fn model(&self) -> Option<&LieAlgebraModel> {
        match self {
            Input::Model(m) => Some(m),
            Input::Point { .. } => None,
        }
    }
}

/// Parses JSON text. Syntax errors surface as [`AcmsError::Json`] with line and column.
pub fn parse_input(text: &str) -> Result<Input> {
    let value: Value = serde_json::from_str(text)?;
    if value.get("brackets").is_some() {
        let m: ModelJson = serde_json::from_value(value)?;
        return Ok(Input::Model(m.to_model()?));
    }
    let p: PointJson = serde_json::from_value(value)?;
    let structure = p.structure.to_structure()?;
    let alpha = p.tensor.to_tensor(structure.dim())?;
    Ok(Input::Point { structure, alpha })
}

pub fn point_json(st: &Structure, alpha: &Tensor3) -> PointJson {
    PointJson { structure: StructureJson::from_structure(st), tensor: TensorJson::from_tensor(alpha) }
}

#[derive(Serialize)]
pub struct IntrinsicJson {
    #[serde(rename = "S")]
    pub s: Vec<Vec<f64>>,
    pub h: Vec<Vec<f64>>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<f64>>,
}

impl From<&IntrinsicData> for IntrinsicJson {
    fn from(d: &IntrinsicData) -> Self {
        Self { s: rows(&d.s), h: rows(&d.h), p: rows(&d.p) }
    }
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits; negative zero becomes zero.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let r: f64 = s.parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Rounds every float in a JSON tree.
pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with rounded floats; identical input gives identical bytes.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let v = round_value(serde_json::to_value(value)?);
    Ok(serde_json::to_string_pretty(&v)?)
}
