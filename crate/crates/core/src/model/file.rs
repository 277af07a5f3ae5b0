//! JSON model files.
//!
//! ```json
//! {
//!   "vertices": [ { "id": 0, "h": 0.1, "a": 1.0 }, ... ],
//!   "edges":    [ { "u": 0, "v": 1, "beta": 0.3 }, ... ]
//! }
//! ```
//!
//! `a` is optional and defaults to 0. Vertex ids must be exactly `0..n` in
//! any order. Writing always emits vertices by id and edges in canonical
//! `(min, max)` order, so `write(parse(write(m))) == write(m)` byte for byte.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{IsingModel, WeightVector};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: usize,
    pub h: f64,
    #[serde(default)]
    pub a: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub beta: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl ModelFile {
    pub fn from_model(model: &IsingModel, weights: &WeightVector) -> Result<Self> {
        weights.check_against(model)?;
        Ok(ModelFile {
            vertices: (0..model.n())
                .map(|v| VertexRecord {
                    id: v,
                    h: model.field(v),
                    a: weights.get(v),
                })
                .collect(),
            edges: model
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    u: e.u,
                    v: e.v,
                    beta: e.beta,
                })
                .collect(),
        })
    }

    pub fn into_model(self) -> Result<(IsingModel, WeightVector)> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::InvalidModel("model file lists no vertices".into()));
        }
        let mut fields = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let mut seen = vec![false; n];
        for rec in &self.vertices {
            if rec.id >= n {
                return Err(Error::InvalidModel(format!(
                    "vertex id {} is out of range; ids must be 0..{n}",
                    rec.id
                )));
            }
            if std::mem::replace(&mut seen[rec.id], true) {
                return Err(Error::InvalidModel(format!("duplicate vertex id {}", rec.id)));
            }
            if !rec.a.is_finite() {
                return Err(Error::InvalidModel(format!("vertex {} has a non-finite weight", rec.id)));
            }
            fields[rec.id] = rec.h;
            weights[rec.id] = rec.a;
        }
        let mut keys = BTreeSet::new();
        for e in &self.edges {
            if e.u == e.v {
                return Err(Error::InvalidModel(format!("self-loop at vertex {}", e.u)));
            }
            if !keys.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidModel(format!("duplicate edge ({}, {})", e.u, e.v)));
            }
        }
        let model = IsingModel::new(fields, self.edges.iter().map(|e| (e.u, e.v, e.beta)))?;
        Ok((model, WeightVector::new(weights)))
    }
}

pub fn parse_model(text: &str) -> Result<(IsingModel, WeightVector)> {
    let file: ModelFile = serde_json::from_str(text)?;
    file.into_model()
}

pub fn read_model(path: impl AsRef<Path>) -> Result<(IsingModel, WeightVector)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidModel(format!("cannot read {}: {e}", path.display())))?;
    parse_model(&text)
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_model(model: &IsingModel, weights: &WeightVector) -> Result<String> {
    let mut out = serde_json::to_string_pretty(&ModelFile::from_model(model, weights)?)?;
    out.push('\n');
    Ok(out)
}
