//! Discounted trace pseudometric with certified bounds.
//!
//! The distance between `mu` and `nu` at discount `c` is the supremum over
//! words `w` of `c^|w| * |mass_mu(w) - mass_nu(w)|`. Exploring all words up
//! to a horizon `H` yields the exact truncated value as a lower bound; the
//! tail beyond `H` is bounded by `c^(H+1) * B` where `B` is the largest
//! residual mass on the frontier, because masses only shrink when a word is
//! extended. For `c < 1` the tail vanishes geometrically and the loop runs
//! until the requested tolerance; for `c = 1` the loop runs to the given
//! horizon and the upper bound may stay loose. The value of the undiscounted
//! distance is in general not exactly computable, so nonzero results are
//! only ever reported as intervals.
//!
//! Exact models get a zero fast path: the span basis decides bisimilarity
//! first, and equivalent pairs return the point interval `[0, 0]`.
//!
//! Word functionals are deduplicated within each exploration layer. Two
//! words of equal length with the same functional have identical subtree
//! values at every deeper length, so only the canonically first one is
//! expanded; lower bound, witness choice and frontier bound are unaffected.

use std::any::Any;
use std::collections::HashSet;

use thiserror::Error;

use crate::error::LmpError;
use crate::model::{FiniteLmp, SubDist, Word};
use crate::num::{Rational, Scalar};

use super::span::SpanBasis;

/// Certified interval for a distance query.
#[derive(Debug, Clone)]
pub struct DistanceBounds<S: Scalar> {
    /// Largest explored word value; always realized by `witness`.
    pub lower: S,
    /// `max(lower, c^(H+1) * B)` with `B` the frontier residual mass.
    pub upper: S,
    /// Canonically least word realizing `lower`.
    pub witness: Word,
    /// Deepest fully explored word length.
    pub horizon_used: usize,
    /// The discount factor the query ran with.
    pub discount: S,
}

/// Budget for a distance query: a tolerance, a horizon, or both.
#[derive(Debug, Clone)]
pub struct DistanceParams<S: Scalar> {
    pub discount: S,
    pub tol: Option<S>,
    pub max_horizon: Option<usize>,
}

impl<S: Scalar> DistanceParams<S> {
    pub fn with_horizon(discount: S, max_horizon: usize) -> Self {
        DistanceParams {
            discount,
            tol: None,
            max_horizon: Some(max_horizon),
        }
    }

    pub fn with_tol(discount: S, tol: S) -> Self {
        DistanceParams {
            discount,
            tol: Some(tol),
            max_horizon: None,
        }
    }
}

/// Fallback horizon when only a tolerance is given.
const TOL_HORIZON_CAP: usize = 512;

#[derive(Debug, Error)]
pub enum DistanceError<S: Scalar> {
    #[error("discount factor must lie in (0, 1]")]
    InvalidDiscount,
    #[error("invalid distance query: {0}")]
    InvalidParams(String),
    #[error("budget exhausted before reaching the tolerance (bounds [{}, {}])", .0.lower, .0.upper)]
    BudgetExhausted(DistanceBounds<S>),
    #[error(transparent)]
    Model(#[from] LmpError),
}

/// Compute certified bounds on the discounted trace distance.
pub fn distance<S: Scalar>(
    lmp: &FiniteLmp<S>,
    mu: &SubDist<S>,
    nu: &SubDist<S>,
    params: &DistanceParams<S>,
) -> Result<DistanceBounds<S>, DistanceError<S>> {
    let c = &params.discount;
    if !(*c > S::zero() && *c <= S::one()) {
        return Err(DistanceError::InvalidDiscount);
    }
    if params.tol.is_none() && params.max_horizon.is_none() {
        return Err(DistanceError::InvalidParams(
            "either tol or max_horizon must be given".into(),
        ));
    }
    if let Some(tol) = &params.tol {
        if !(*tol > S::zero()) {
            return Err(DistanceError::InvalidParams("tol must be positive".into()));
        }
    }
    let n = lmp.state_count();
    if mu.len() != n || nu.len() != n {
        return Err(LmpError::DimensionMismatch(format!(
            "subdistributions of length {} and {} against {n} states",
            mu.len(),
            nu.len()
        ))
        .into());
    }

    if S::EXACT {
        if let (Some(lmp_q), Some(mu_q), Some(nu_q)) = (
            (lmp as &dyn Any).downcast_ref::<FiniteLmp<Rational>>(),
            (mu as &dyn Any).downcast_ref::<SubDist<Rational>>(),
            (nu as &dyn Any).downcast_ref::<SubDist<Rational>>(),
        ) {
            if SpanBasis::new(lmp_q).equivalent(mu_q, nu_q)? {
                return Ok(DistanceBounds {
                    lower: S::zero(),
                    upper: S::zero(),
                    witness: Word::empty(),
                    horizon_used: 0,
                    discount: c.clone(),
                });
            }
        }
    }

    let n_actions = lmp.actions().len();
    let mut lower = S::zero();
    let mut witness: Vec<usize> = Vec::new();
    // Current layer of (word, functional) nodes; starts at epsilon.
    let mut layer: Vec<(Vec<usize>, Vec<S>)> = vec![(Vec::new(), vec![S::one(); n])];
    let mut weight = S::one();
    let mut horizon = 0usize;

    loop {
        let mut frontier_mass = S::zero();
        for (word, beta) in &layer {
            let m1 = dot(mu.as_slice(), beta);
            let m2 = dot(nu.as_slice(), beta);
            let value = weight.mul(&m1.abs_diff(&m2));
            if value > lower {
                lower = value;
                witness = word.clone();
            }
            let bigger = if m1 >= m2 { m1 } else { m2 };
            if bigger > frontier_mass {
                frontier_mass = bigger;
            }
        }
        let tail = weight.mul(c).mul(&frontier_mass);
        let upper = if tail > lower { tail } else { lower.clone() };

        let done_by_tol = params
            .tol
            .as_ref()
            .map(|tol| upper.sub(&lower).le_with_slack(tol))
            .unwrap_or(false);
        let at_horizon = params.max_horizon.map(|h| horizon >= h).unwrap_or(false)
            || (params.max_horizon.is_none() && horizon >= TOL_HORIZON_CAP);
        if done_by_tol || at_horizon || frontier_mass.is_zero() {
            let bounds = DistanceBounds {
                lower,
                upper,
                witness: ids_to_word(lmp, &witness),
                horizon_used: horizon,
                discount: c.clone(),
            };
            if params.tol.is_some() && !done_by_tol && !frontier_mass.is_zero() {
                return Err(DistanceError::BudgetExhausted(bounds));
            }
            return Ok(bounds);
        }

        let mut next: Vec<(Vec<usize>, Vec<S>)> = Vec::new();
        let mut seen: HashSet<S::Key> = HashSet::new();
        for a in 0..n_actions {
            for (word, beta) in &layer {
                let child = lmp.matrix(a).apply(beta);
                if !seen.insert(S::vec_key(&child)) {
                    continue;
                }
                let mut child_word = Vec::with_capacity(word.len() + 1);
                child_word.push(a);
                child_word.extend_from_slice(word);
                next.push((child_word, child));
            }
        }
        layer = next;
        weight = weight.mul(c);
        horizon += 1;
    }
}

fn dot<S: Scalar>(mu: &[S], v: &[S]) -> S {
    mu.iter().zip(v).fold(S::zero(), |acc, (m, x)| {
        if m.is_zero() {
            acc
        } else {
            acc.add(&m.mul(x))
        }
    })
}

fn ids_to_word<S: Scalar>(lmp: &FiniteLmp<S>, ids: &[usize]) -> Word {
    ids.iter().map(|&a| lmp.actions()[a].clone()).collect()
}
