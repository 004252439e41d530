//! Parsing of subdistribution specs: `dirac:NAME`, `initial`, or an
//! inline JSON vector with entries in the model's numeric mode.

use anyhow::{anyhow, Result};
use lmp::model::SubDist;
use lmp::num::Scalar;
use lmp::FiniteLmp;

pub fn parse_subdist<S: Scalar>(lmp: &FiniteLmp<S>, spec: &str) -> Result<SubDist<S>> {
    let spec = spec.trim();
    if spec == "initial" {
        return Ok(lmp.initial().clone());
    }
    if let Some(name) = spec.strip_prefix("dirac:") {
        return Ok(lmp.dirac(name)?);
    }
    if spec.starts_with('[') {
        let entries: Vec<serde_json::Value> =
            serde_json::from_str(spec).map_err(|e| anyhow!("bad inline vector: {e}"))?;
        let mass = entries
            .iter()
            .enumerate()
            .map(|(i, v)| S::from_json(v).map_err(|e| anyhow!("vector entry {i}: {e}")))
            .collect::<Result<Vec<_>>>()?;
        if mass.len() != lmp.state_count() {
            return Err(anyhow!(
                "vector has {} entries, model has {} states",
                mass.len(),
                lmp.state_count()
            ));
        }
        return Ok(SubDist::new(mass)?);
    }
    Err(anyhow!(
        "bad subdistribution spec `{spec}`: expected `dirac:NAME`, `initial`, or a JSON vector"
    ))
}

/// For the state logic: the spec must be a point mass, and the state name
/// is what gets evaluated.
pub fn dirac_state_name(spec: &str) -> Result<&str> {
    spec.trim()
        .strip_prefix("dirac:")
        .ok_or_else(|| anyhow!("the state logic evaluates at a state; pass `--dist dirac:NAME`"))
}
