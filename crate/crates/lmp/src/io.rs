//! Model file format.
//!
//! Models are stored as UTF-8 JSON:
//!
//! ```json
//! {
//!   "numeric": "rational" | "float",
//!   "states": ["s0", ...],
//!   "actions": ["a", ...],
//!   "transitions": { "<action>": [ [row of entries], ... ] },
//!   "initial": [ entries ]
//! }
//! ```
//!
//! Entries are `"p/q"` strings in rational mode and plain numbers in float
//! mode; matrix row `i` belongs to `states[i]`. Values are stored verbatim,
//! so a save/load round trip reproduces the model exactly in both modes.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{LmpError, Result};
use crate::model::FiniteLmp;
use crate::num::{Rational, Scalar};

/// A loaded model in either numeric mode.
#[derive(Debug, Clone)]
pub enum Model {
    Exact(FiniteLmp<Rational>),
    Float(FiniteLmp<f64>),
}

impl Model {
    pub fn numeric_mode(&self) -> &'static str {
        match self {
            Model::Exact(_) => "rational",
            Model::Float(_) => "float",
        }
    }

    pub fn state_count(&self) -> usize {
        match self {
            Model::Exact(m) => m.state_count(),
            Model::Float(m) => m.state_count(),
        }
    }

    /// The exact-mode model, or `ExactModeRequired`.
    pub fn require_exact(&self) -> Result<&FiniteLmp<Rational>> {
        match self {
            Model::Exact(m) => Ok(m),
            Model::Float(_) => Err(LmpError::ExactModeRequired),
        }
    }
}

/// Load a model file, dispatching on its `numeric` tag.
pub fn load_model(path: impl AsRef<Path>) -> Result<Model> {
    let text = std::fs::read_to_string(path)?;
    parse_model(&text)
}

/// Parse model JSON from a string.
pub fn parse_model(text: &str) -> Result<Model> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| LmpError::Parse(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| LmpError::Parse("top level must be an object".into()))?;
    let numeric = obj
        .get("numeric")
        .and_then(Value::as_str)
        .ok_or_else(|| LmpError::Parse("missing `numeric` tag".into()))?;
    match numeric {
        "rational" => Ok(Model::Exact(parse_typed::<Rational>(obj)?)),
        "float" => Ok(Model::Float(parse_typed::<f64>(obj)?)),
        other => Err(LmpError::Parse(format!(
            "`numeric` must be \"rational\" or \"float\", got \"{other}\""
        ))),
    }
}

fn string_list(obj: &Map<String, Value>, field: &str) -> Result<Vec<String>> {
    obj.get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| LmpError::Parse(format!("missing array `{field}`")))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| LmpError::Parse(format!("`{field}` entries must be strings")))
        })
        .collect()
}

fn parse_typed<S: Scalar>(obj: &Map<String, Value>) -> Result<FiniteLmp<S>> {
    let states = string_list(obj, "states")?;
    let actions = string_list(obj, "actions")?;
    let trans_obj = obj
        .get("transitions")
        .and_then(Value::as_object)
        .ok_or_else(|| LmpError::Parse("missing object `transitions`".into()))?;
    for key in trans_obj.keys() {
        if !actions.iter().any(|a| a == key) {
            return Err(LmpError::Parse(format!(
                "transitions listed for unknown action `{key}`"
            )));
        }
    }
    let mut matrices = Vec::with_capacity(actions.len());
    for action in &actions {
        let rows_json = trans_obj
            .get(action)
            .and_then(Value::as_array)
            .ok_or_else(|| LmpError::Parse(format!("missing matrix for action `{action}`")))?;
        let mut rows = Vec::with_capacity(rows_json.len());
        for (i, row_json) in rows_json.iter().enumerate() {
            let row_json = row_json.as_array().ok_or_else(|| {
                LmpError::Parse(format!("action `{action}` row {i} is not an array"))
            })?;
            let mut row = Vec::with_capacity(row_json.len());
            for (j, entry) in row_json.iter().enumerate() {
                let v = S::from_json(entry).map_err(|e| {
                    LmpError::Parse(format!("action `{action}` entry ({i}, {j}): {e}"))
                })?;
                row.push(v);
            }
            rows.push(row);
        }
        matrices.push(rows);
    }
    let initial_json = obj
        .get("initial")
        .and_then(Value::as_array)
        .ok_or_else(|| LmpError::Parse("missing array `initial`".into()))?;
    let initial = initial_json
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            S::from_json(entry).map_err(|e| LmpError::Parse(format!("initial entry {i}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteLmp::from_dense(states, actions, matrices, initial)
}

/// Serialize a model to the JSON format.
pub fn model_to_json(model: &Model) -> Value {
    match model {
        Model::Exact(m) => typed_to_json(m, "rational"),
        Model::Float(m) => typed_to_json(m, "float"),
    }
}

fn typed_to_json<S: Scalar>(lmp: &FiniteLmp<S>, tag: &str) -> Value {
    let n = lmp.state_count();
    let mut transitions = Map::new();
    for action in lmp.actions() {
        let rows: Vec<Value> = (0..n)
            .map(|s| {
                Value::Array(
                    (0..n)
                        .map(|t| {
                            lmp.rate(action, &lmp.states()[s], &lmp.states()[t])
                                .expect("indices are in range")
                                .to_json()
                        })
                        .collect(),
                )
            })
            .collect();
        transitions.insert(action.clone(), Value::Array(rows));
    }
    json!({
        "numeric": tag,
        "states": lmp.states(),
        "actions": lmp.actions(),
        "transitions": transitions,
        "initial": lmp.initial().iter().map(Scalar::to_json).collect::<Vec<_>>(),
    })
}

/// Write a model file.
pub fn save_model(model: &Model, path: impl AsRef<Path>) -> Result<()> {
    let json = model_to_json(model);
    let text = serde_json::to_string_pretty(&json).expect("model JSON is serializable");
    std::fs::write(path, text)?;
    Ok(())
}
