//! Equivalence decisions and behavioural distances.
//!
//! Exact subdistribution bisimilarity, the discounted trace pseudometric
//! with certified bounds, approximate bisimilarity verdicts, the
//! equivalence metric between whole models, and state-bisimulation
//! partition refinement.

mod distance;
mod refine;
mod span;

pub use distance::{distance, DistanceBounds, DistanceError, DistanceParams};
pub use refine::{check_state_implies_dist, state_bisim_partition, Partition};
pub use span::{decide_dbisim, SpanBasis, TraceWitness};

use crate::error::{LmpError, Result};
use crate::model::{FiniteLmp, SubDist};
use crate::num::Scalar;

/// Verdict of an approximate-bisimilarity query.
#[derive(Debug, Clone)]
pub enum ApproxVerdict<S: Scalar> {
    /// The distance upper bound is at most epsilon.
    Yes,
    /// The distance lower bound exceeds epsilon.
    No,
    /// Inconclusive; carries the certified interval.
    Unknown(DistanceBounds<S>),
}

/// Decide `mu ~_eps^c nu`, i.e. whether the discounted distance is at most
/// `epsilon`, as far as the computed bounds allow.
///
/// An exhausted exploration budget is not an error here: the partial
/// interval may still resolve the comparison, and otherwise the verdict is
/// `Unknown` with the interval attached.
pub fn approx_bisim<S: Scalar>(
    lmp: &FiniteLmp<S>,
    mu: &SubDist<S>,
    nu: &SubDist<S>,
    epsilon: &S,
    params: &DistanceParams<S>,
) -> std::result::Result<ApproxVerdict<S>, DistanceError<S>> {
    if *epsilon < S::zero() {
        return Err(DistanceError::InvalidParams(
            "epsilon must be nonnegative".into(),
        ));
    }
    let bounds = match distance(lmp, mu, nu, params) {
        Ok(b) => b,
        Err(DistanceError::BudgetExhausted(b)) => b,
        Err(other) => return Err(other),
    };
    if bounds.upper.le_with_slack(epsilon) {
        Ok(ApproxVerdict::Yes)
    } else if !bounds.lower.le_with_slack(epsilon) {
        Ok(ApproxVerdict::No)
    } else {
        Ok(ApproxVerdict::Unknown(bounds))
    }
}

/// Disjoint union of two models over a shared action set.
///
/// States are prefixed `1:` and `2:`; the union's initial distribution is
/// the first model's. Returns the union together with both initial
/// distributions lifted to the union's state space.
pub fn disjoint_union<S: Scalar>(
    m1: &FiniteLmp<S>,
    m2: &FiniteLmp<S>,
) -> Result<(FiniteLmp<S>, SubDist<S>, SubDist<S>)> {
    let order = match_actions(m1, m2)?;
    let n1 = m1.state_count();
    let n2 = m2.state_count();
    let states: Vec<String> = m1
        .states()
        .iter()
        .map(|s| format!("1:{s}"))
        .chain(m2.states().iter().map(|s| format!("2:{s}")))
        .collect();
    let mut matrices = Vec::with_capacity(m1.actions().len());
    for (a1, &a2) in order.iter().enumerate() {
        let mut rows: Vec<Vec<(usize, S)>> = Vec::with_capacity(n1 + n2);
        for s in 0..n1 {
            rows.push(m1.matrix(a1).rows[s].clone());
        }
        for s in 0..n2 {
            rows.push(
                m2.matrix(a2).rows[s]
                    .iter()
                    .map(|(t, v)| (t + n1, v.clone()))
                    .collect(),
            );
        }
        matrices.push(rows);
    }
    let mut initial = vec![S::zero(); n1 + n2];
    for (i, v) in m1.initial().iter().enumerate() {
        initial[i] = v.clone();
    }
    let union = FiniteLmp::from_sparse(states, m1.actions().to_vec(), matrices, initial)?;

    let mut left = vec![S::zero(); n1 + n2];
    for (i, v) in m1.initial().iter().enumerate() {
        left[i] = v.clone();
    }
    let mut right = vec![S::zero(); n1 + n2];
    for (i, v) in m2.initial().iter().enumerate() {
        right[n1 + i] = v.clone();
    }
    Ok((union, SubDist::new(left)?, SubDist::new(right)?))
}

/// Map `m1`'s action order onto `m2`'s matrix indices; the labels must
/// agree as sets.
pub(crate) fn match_actions<S: Scalar>(m1: &FiniteLmp<S>, m2: &FiniteLmp<S>) -> Result<Vec<usize>> {
    if m1.actions().len() != m2.actions().len() {
        return Err(LmpError::ActionMismatch(format!(
            "{} vs {} actions",
            m1.actions().len(),
            m2.actions().len()
        )));
    }
    m1.actions()
        .iter()
        .map(|a| {
            m2.action_id(a)
                .map_err(|_| LmpError::ActionMismatch(format!("`{a}` missing from second model")))
        })
        .collect()
}

/// Distance between two whole models at a given discount: the distance
/// between their initial distributions on the disjoint union.
pub fn model_distance<S: Scalar>(
    m1: &FiniteLmp<S>,
    m2: &FiniteLmp<S>,
    params: &DistanceParams<S>,
) -> std::result::Result<DistanceBounds<S>, DistanceError<S>> {
    let (union, left, right) = disjoint_union(m1, m2)?;
    distance(&union, &left, &right, params)
}

/// The equivalence metric `D`: the undiscounted distance between the two
/// models' initial distributions, the least epsilon at which they are
/// epsilon-trace-equivalent.
///
/// On exact models the zero case is decided exactly through the span
/// basis, so `[0, 0]` is reported precisely when the models are
/// subdistribution bisimilar.
pub fn equivalence_metric<S: Scalar>(
    m1: &FiniteLmp<S>,
    m2: &FiniteLmp<S>,
    tol: Option<S>,
    max_horizon: Option<usize>,
) -> std::result::Result<DistanceBounds<S>, DistanceError<S>> {
    let params = DistanceParams {
        discount: S::one(),
        tol,
        max_horizon,
    };
    model_distance(m1, m2, &params)
}
