//! Subcommand implementations. Each returns the process exit code.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, Result};
use serde_json::json;

use lmp::compose::DEFAULT_STATE_CAP;
use lmp::equivalence::{
    distance as trace_distance, equivalence_metric, state_bisim_partition, DistanceError,
    DistanceParams, SpanBasis,
};
use lmp::logic::{
    distinguishing_from_basis, eval_formula, eval_qformula, eval_state_formula, parse_formula,
    parse_qformula, parse_state_formula,
};
use lmp::num::{parse_rational, Scalar};
use lmp::{load_model, save_model, FiniteLmp, Model};

use crate::output::{bounds_human, bounds_json, emit};
use crate::spec::{dirac_state_name, parse_subdist};
use crate::{GenFamily, PairArgs};

fn state_cap() -> usize {
    std::env::var("LMP_STATE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_STATE_CAP)
}

fn scalar_arg<S: Scalar>(text: &str, what: &str) -> Result<S> {
    let q = parse_rational(text).map_err(|e| anyhow!("bad {what} `{text}`: {e}"))?;
    Ok(S::from_rational(&q))
}

pub fn check_equiv(args: &PairArgs) -> Result<i32> {
    let model = load_model(&args.model)?;
    let lmp = model.require_exact()?;
    let mu = parse_subdist(lmp, &args.mu)?;
    let nu = parse_subdist(lmp, &args.nu)?;
    let basis = SpanBasis::new(lmp);
    if basis.equivalent(&mu, &nu)? {
        emit(&json!({ "equivalent": true }), args.human, || {
            "equivalent".to_string()
        });
        return Ok(0);
    }
    let witness = basis.witness(&mu, &nu)?.expect("inequivalent pair has a witness");
    let formula = distinguishing_from_basis(&basis, &mu, &nu)?
        .expect("inequivalent pair has a distinguishing formula");
    emit(
        &json!({
            "equivalent": false,
            "witness": witness.word.0,
            "mass_mu": witness.mass_left.to_json(),
            "mass_nu": witness.mass_right.to_json(),
            "distinguishing_formula": formula.to_string(),
        }),
        args.human,
        || {
            format!(
                "not equivalent\nwitness  {}\nformula  {}",
                witness.word, formula
            )
        },
    );
    Ok(1)
}

pub fn distance(args: &PairArgs, c: &str, tol: Option<&str>, horizon: Option<usize>) -> Result<i32> {
    let model = load_model(&args.model)?;
    match &model {
        Model::Exact(lmp) => distance_typed(lmp, args, c, tol, horizon),
        Model::Float(lmp) => distance_typed(lmp, args, c, tol, horizon),
    }
}

fn distance_typed<S: Scalar>(
    lmp: &FiniteLmp<S>,
    args: &PairArgs,
    c: &str,
    tol: Option<&str>,
    horizon: Option<usize>,
) -> Result<i32> {
    let mu = parse_subdist(lmp, &args.mu)?;
    let nu = parse_subdist(lmp, &args.nu)?;
    let params = DistanceParams::<S> {
        discount: scalar_arg(c, "discount")?,
        tol: tol.map(|t| scalar_arg(t, "tolerance")).transpose()?,
        max_horizon: horizon,
    };
    match trace_distance(lmp, &mu, &nu, &params) {
        Ok(bounds) => {
            emit(&bounds_json(&bounds), args.human, || bounds_human(&bounds));
            Ok(0)
        }
        Err(DistanceError::BudgetExhausted(bounds)) => {
            eprintln!(
                "{}",
                serde_json::to_string(&json!({
                    "error": "BudgetExhausted",
                    "message": "exploration budget exhausted before the tolerance was met",
                    "partial": bounds_json(&bounds),
                }))
                .expect("error JSON serializes")
            );
            Ok(2)
        }
        Err(err) => Err(anyhow!(err.to_string())),
    }
}

pub fn equiv_metric(
    path1: &Path,
    path2: &Path,
    tol: Option<&str>,
    horizon: Option<usize>,
    human: bool,
) -> Result<i32> {
    let m1 = load_model(path1)?;
    let m2 = load_model(path2)?;
    match (&m1, &m2) {
        (Model::Exact(a), Model::Exact(b)) => metric_typed(a, b, tol, horizon, human),
        (Model::Float(a), Model::Float(b)) => metric_typed(a, b, tol, horizon, human),
        _ => Err(anyhow!("models must share a numeric mode")),
    }
}

fn metric_typed<S: Scalar>(
    m1: &FiniteLmp<S>,
    m2: &FiniteLmp<S>,
    tol: Option<&str>,
    horizon: Option<usize>,
    human: bool,
) -> Result<i32> {
    let tol = tol.map(|t| scalar_arg(t, "tolerance")).transpose()?;
    match equivalence_metric(m1, m2, tol, horizon) {
        Ok(bounds) => {
            emit(&bounds_json(&bounds), human, || bounds_human(&bounds));
            Ok(0)
        }
        Err(DistanceError::BudgetExhausted(bounds)) => {
            eprintln!(
                "{}",
                serde_json::to_string(&json!({
                    "error": "BudgetExhausted",
                    "message": "exploration budget exhausted before the tolerance was met",
                    "partial": bounds_json(&bounds),
                }))
                .expect("error JSON serializes")
            );
            Ok(2)
        }
        Err(err) => Err(anyhow!(err.to_string())),
    }
}

pub fn model_check(
    path: &Path,
    dist: &str,
    formula: &str,
    logic: &str,
    c: &str,
    human: bool,
) -> Result<i32> {
    let model = load_model(path)?;
    match &model {
        Model::Exact(lmp) => mc_typed(lmp, dist, formula, logic, c, human),
        Model::Float(lmp) => mc_typed(lmp, dist, formula, logic, c, human),
    }
}

fn mc_typed<S: Scalar>(
    lmp: &FiniteLmp<S>,
    dist: &str,
    formula: &str,
    logic: &str,
    c: &str,
    human: bool,
) -> Result<i32> {
    match logic {
        "l0" => {
            let phi = parse_formula(formula)?;
            let mu = parse_subdist(lmp, dist)?;
            let result = eval_formula(lmp, &mu, &phi)?;
            emit(&json!({ "result": result }), human, || result.to_string());
            Ok(0)
        }
        "state" => {
            let phi = parse_state_formula(formula)?;
            let state = dirac_state_name(dist)?;
            let result = eval_state_formula(lmp, state, &phi)?;
            emit(&json!({ "result": result }), human, || result.to_string());
            Ok(0)
        }
        "quant" => {
            let phi = parse_qformula(formula)?;
            let mu = parse_subdist(lmp, dist)?;
            let discount: S = scalar_arg(c, "discount")?;
            let value = eval_qformula(lmp, &mu, &phi, &discount)?;
            emit(&json!({ "value": value.to_json() }), human, || {
                value.to_string()
            });
            Ok(0)
        }
        other => Err(anyhow!("unknown logic `{other}`: expected l0, state, or quant")),
    }
}

pub fn compose(path1: &Path, path2: &Path, output: &Path, human: bool) -> Result<i32> {
    let m1 = load_model(path1)?;
    let m2 = load_model(path2)?;
    let product = match (&m1, &m2) {
        (Model::Exact(a), Model::Exact(b)) => {
            Model::Exact(lmp::compose::compose(a, b, state_cap())?)
        }
        (Model::Float(a), Model::Float(b)) => {
            Model::Float(lmp::compose::compose(a, b, state_cap())?)
        }
        _ => return Err(anyhow!("models must share a numeric mode")),
    };
    save_model(&product, output)?;
    emit(
        &json!({
            "output": output.display().to_string(),
            "states": product.state_count(),
            "numeric": product.numeric_mode(),
        }),
        human,
        || format!("wrote {} ({} states)", output.display(), product.state_count()),
    );
    Ok(0)
}

pub fn refine(path: &Path, human: bool) -> Result<i32> {
    let model = load_model(path)?;
    let lmp = model.require_exact()?;
    let partition = state_bisim_partition(lmp);
    let blocks = partition.named_blocks(lmp);
    emit(&json!({ "blocks": blocks }), human, || {
        blocks
            .iter()
            .map(|b| b.join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(0)
}

pub fn generate(family: GenFamily) -> Result<i32> {
    let (model, output): (Model, PathBuf) = match family {
        GenFamily::Ex1 { cells, output } => {
            (Model::Exact(lmp::kernels::make_ex1(cells)?), output)
        }
        GenFamily::Cantor {
            depth,
            max_action,
            output,
        } => (
            Model::Exact(lmp::kernels::make_cantor(depth, max_action)?),
            output,
        ),
        GenFamily::Heater {
            rooms,
            ambient,
            transfer,
            cross,
            gain,
            sd,
            tmin,
            tmax,
            cells,
            seed,
            output,
        } => {
            let params = lmp::kernels::HeaterParams {
                n_rooms: rooms,
                ambient,
                transfer_out: vec![transfer; rooms],
                transfer_cross: (0..rooms)
                    .map(|i| {
                        (0..rooms)
                            .map(|j| if i == j { 0.0 } else { cross })
                            .collect()
                    })
                    .collect(),
                heater_gain: vec![gain; rooms],
                noise_sd: vec![sd; rooms],
                temp_min: tmin,
                temp_max: tmax,
                temp_cells: cells,
                seed,
                state_cap: state_cap(),
            };
            (Model::Float(lmp::kernels::make_heater(&params)?), output)
        }
    };
    save_model(&model, &output)?;
    println!(
        "{}",
        serde_json::to_string(&json!({
            "output": output.display().to_string(),
            "states": model.state_count(),
            "numeric": model.numeric_mode(),
        }))
        .expect("output serializes")
    );
    Ok(0)
}
