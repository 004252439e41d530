//! JSON and plain-text rendering helpers.

use lmp::equivalence::DistanceBounds;
use lmp::num::Scalar;
use serde_json::{json, Value};

/// One-line machine-parsable error for stderr.
pub fn error_line(err: &anyhow::Error) -> String {
    let kind = err
        .downcast_ref::<lmp::LmpError>()
        .map(kind_name)
        .unwrap_or("Error");
    serde_json::to_string(&json!({ "error": kind, "message": err.to_string() }))
        .expect("error JSON serializes")
}

fn kind_name(err: &lmp::LmpError) -> &'static str {
    use lmp::LmpError::*;
    match err {
        Parse(_) => "ParseError",
        Invariant(_) => "InvariantError",
        UnknownState(_) => "UnknownState",
        UnknownAction(_) => "UnknownAction",
        DimensionMismatch(_) => "DimensionMismatch",
        MassExceeded(_) => "MassExceeded",
        ExactModeRequired => "ExactModeRequired",
        InvalidDiscount => "InvalidDiscount",
        ActionMismatch(_) => "ActionMismatch",
        SizeLimit(_) => "SizeLimit",
        StateCapExceeded(_) => "StateCapExceeded",
        InvalidGrid(_) => "InvalidGrid",
        InvalidDepth(_) => "InvalidDepth",
        Scope(_) => "ScopeError",
        UnsupportedFragment(_) => "UnsupportedFragment",
        TheoremViolation(_) => "TheoremViolation",
        Io(_) => "IoError",
    }
}

pub fn bounds_json<S: Scalar>(bounds: &DistanceBounds<S>) -> Value {
    json!({
        "lower": bounds.lower.to_json(),
        "upper": bounds.upper.to_json(),
        "witness": bounds.witness.0,
        "horizon": bounds.horizon_used,
        "discount": bounds.discount.to_json(),
    })
}

pub fn bounds_human<S: Scalar>(bounds: &DistanceBounds<S>) -> String {
    format!(
        "lower   {}\nupper   {}\nwitness {}\nhorizon {}",
        bounds.lower, bounds.upper, bounds.witness, bounds.horizon_used
    )
}

pub fn emit(value: &Value, human: bool, human_text: impl FnOnce() -> String) {
    if human {
        println!("{}", human_text());
    } else {
        println!("{}", serde_json::to_string(value).expect("output serializes"));
    }
}
