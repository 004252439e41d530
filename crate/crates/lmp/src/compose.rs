//! Synchronous parallel composition over a common alphabet.
//!
//! The product of two models runs both components in lockstep on the same
//! action: the state space is the cartesian product, each transition mass
//! is the product of the component masses, and the initial distribution is
//! the product distribution. Surviving mass therefore factorizes exactly:
//! the trace mass of the product is the product of the component trace
//! masses for every word.

use crate::equivalence::{
    match_actions, model_distance, DistanceBounds, DistanceError, DistanceParams,
};
use crate::error::{LmpError, Result};
use crate::model::FiniteLmp;
use crate::num::Scalar;

/// Default cap on the product state count.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Build the synchronous product `m1 || m2`.
///
/// Product states are materialized eagerly and named `s|t`; the cap guards
/// against accidental blowup. The action lists must agree as sets (order
/// is matched by label).
pub fn compose<S: Scalar>(
    m1: &FiniteLmp<S>,
    m2: &FiniteLmp<S>,
    state_cap: usize,
) -> Result<FiniteLmp<S>> {
    let order = match_actions(m1, m2)?;
    let n1 = m1.state_count();
    let n2 = m2.state_count();
    let n = n1.checked_mul(n2).filter(|&n| n <= state_cap).ok_or_else(|| {
        LmpError::SizeLimit(format!("{n1} x {n2} product states exceed the cap {state_cap}"))
    })?;

    let mut states = Vec::with_capacity(n);
    for s1 in m1.states() {
        for s2 in m2.states() {
            states.push(format!("{s1}|{s2}"));
        }
    }

    let mut matrices = Vec::with_capacity(m1.actions().len());
    for (a1, &a2) in order.iter().enumerate() {
        let mut rows: Vec<Vec<(usize, S)>> = Vec::with_capacity(n);
        for s1 in 0..n1 {
            let row1 = &m1.matrix(a1).rows[s1];
            for s2 in 0..n2 {
                let row2 = &m2.matrix(a2).rows[s2];
                let mut row = Vec::with_capacity(row1.len() * row2.len());
                for (t1, v1) in row1 {
                    for (t2, v2) in row2 {
                        row.push((t1 * n2 + t2, v1.mul(v2)));
                    }
                }
                rows.push(row);
            }
        }
        matrices.push(rows);
    }

    let mut initial = Vec::with_capacity(n);
    for p1 in m1.initial().iter() {
        for p2 in m2.initial().iter() {
            initial.push(p1.mul(p2));
        }
    }

    FiniteLmp::from_sparse(states, m1.actions().to_vec(), matrices, initial)
}

/// Outcome of checking the composition distance bound.
#[derive(Debug, Clone)]
pub struct CompositionBoundReport<S: Scalar> {
    /// Distance between the first pair of components.
    pub eps1: DistanceBounds<S>,
    /// Distance between the second pair of components.
    pub eps2: DistanceBounds<S>,
    /// Distance between the two compositions.
    pub delta: DistanceBounds<S>,
    /// The conservative bound `eps1.upper + eps2.upper - eps1.lower * eps2.lower`.
    pub bound: S,
    /// Whether `delta.lower <= bound` held.
    pub holds: bool,
}

/// Verify the composition bound: if the component pairs are within
/// `eps1` and `eps2`, the compositions are within `eps1 + eps2 - eps1*eps2`.
///
/// All distances are horizon-bounded; the comparison pits delta's lower
/// bound against the bound assembled from the epsilons' outer interval
/// ends, so a reported violation can only come from a real bug, never
/// from interval slack.
pub fn check_composition_bound<S: Scalar>(
    m1: &FiniteLmp<S>,
    m1p: &FiniteLmp<S>,
    m2: &FiniteLmp<S>,
    m2p: &FiniteLmp<S>,
    discount: S,
    horizon: usize,
    state_cap: usize,
) -> std::result::Result<CompositionBoundReport<S>, DistanceError<S>> {
    let params = DistanceParams::with_horizon(discount, horizon);
    let eps1 = model_distance(m1, m1p, &params)?;
    let eps2 = model_distance(m2, m2p, &params)?;
    let left = compose(m1, m2, state_cap)?;
    let right = compose(m1p, m2p, state_cap)?;
    let delta = model_distance(&left, &right, &params)?;
    let bound = eps1
        .upper
        .add(&eps2.upper)
        .sub(&eps1.lower.mul(&eps2.lower));
    let holds = delta.lower.le_with_slack(&bound);
    Ok(CompositionBoundReport {
        eps1,
        eps2,
        delta,
        bound,
        holds,
    })
}
