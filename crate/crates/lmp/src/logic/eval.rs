//! Formula evaluation, normal forms, and distinguishing formulas.

use crate::equivalence::SpanBasis;
use crate::error::{LmpError, Result};
use crate::model::{FiniteLmp, SubDist};
use crate::num::{Rational, Scalar};
use crate::semantics::lift_step_id;

use super::{Formula, QFormula, StateFormula};

/// Evaluate a distribution-logic formula at a subdistribution.
pub fn eval_formula<S: Scalar>(
    lmp: &FiniteLmp<S>,
    mu: &SubDist<S>,
    formula: &Formula,
) -> Result<bool> {
    if mu.len() != lmp.state_count() {
        return Err(LmpError::DimensionMismatch(format!(
            "subdistribution has length {}, model has {} states",
            mu.len(),
            lmp.state_count()
        )));
    }
    eval_at(lmp, mu, formula)
}

fn eval_at<S: Scalar>(lmp: &FiniteLmp<S>, mu: &SubDist<S>, formula: &Formula) -> Result<bool> {
    match formula {
        Formula::True => Ok(true),
        Formula::And(parts) => {
            for part in parts {
                if !eval_at(lmp, mu, part)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Diamond {
            action,
            threshold,
            inner,
        } => {
            let a = lmp.action_id(action)?;
            let successor = lift_step_id(lmp, mu, a);
            Ok(successor.total().meets_threshold(threshold) && eval_at(lmp, &successor, inner)?)
        }
        Formula::EpsAtLeast(q) => Ok(mu.total().meets_threshold(q)),
        Formula::Can(action) => {
            let a = lmp.action_id(action)?;
            let total = lift_step_id(lmp, mu, a).total();
            Ok(!total.eq_with_slack(&S::zero()))
        }
        Formula::Delta(action) => {
            let a = lmp.action_id(action)?;
            let total = lift_step_id(lmp, mu, a).total();
            Ok(total.eq_with_slack(&S::zero()))
        }
        Formula::Not(inner) => Ok(!eval_at(lmp, mu, inner)?),
    }
}

/// Evaluate a state-logic formula at a named state.
///
/// On a finite discrete space every subset is measurable, and the mass a
/// state sends into sets of `phi`-states is maximized at the full
/// satisfaction set, so `<a>st q phi` holds exactly when
/// `tau_a(s, Sat(phi)) >= q`.
pub fn eval_state_formula<S: Scalar>(
    lmp: &FiniteLmp<S>,
    state: &str,
    formula: &StateFormula,
) -> Result<bool> {
    let s = lmp.state_id(state)?;
    Ok(sat_states(lmp, formula)?[s])
}

/// Satisfaction set of a state formula, as a mask over state indices.
pub fn sat_states<S: Scalar>(lmp: &FiniteLmp<S>, formula: &StateFormula) -> Result<Vec<bool>> {
    let n = lmp.state_count();
    match formula {
        StateFormula::True => Ok(vec![true; n]),
        StateFormula::And(parts) => {
            let mut mask = vec![true; n];
            for part in parts {
                let part_mask = sat_states(lmp, part)?;
                for (m, p) in mask.iter_mut().zip(part_mask) {
                    *m = *m && p;
                }
            }
            Ok(mask)
        }
        StateFormula::DiamondSt {
            action,
            threshold,
            inner,
        } => {
            let a = lmp.action_id(action)?;
            let inner_mask = sat_states(lmp, inner)?;
            Ok((0..n)
                .map(|s| {
                    let mass = lmp.matrix(a).rows[s]
                        .iter()
                        .filter(|(t, _)| inner_mask[*t])
                        .fold(S::zero(), |acc, (_, v)| acc.add(v));
                    mass.meets_threshold(threshold)
                })
                .collect())
        }
    }
}

/// Conjunctive normal form of a plain distribution-logic formula: a
/// conjunction of diamond chains ending in `T`, plus top-level mass tests.
///
/// Uses the law `<a>q (phi1 & phi2) == <a>q phi1 & <a>q phi2`. Only the
/// core fragment is supported; negation, `can` and `delta` are rejected.
pub fn to_cnf(formula: &Formula) -> Result<Formula> {
    let mut chains = Vec::new();
    collect_chains(formula, &mut chains)?;
    Ok(match chains.len() {
        0 => Formula::True,
        1 => chains.pop().unwrap(),
        _ => Formula::And(chains),
    })
}

fn collect_chains(formula: &Formula, out: &mut Vec<Formula>) -> Result<()> {
    match formula {
        Formula::True => {
            out.push(Formula::True);
            Ok(())
        }
        Formula::And(parts) => {
            for part in parts {
                collect_chains(part, out)?;
            }
            Ok(())
        }
        Formula::EpsAtLeast(q) => {
            out.push(Formula::EpsAtLeast(q.clone()));
            Ok(())
        }
        Formula::Diamond {
            action,
            threshold,
            inner,
        } => {
            let mut inner_chains = Vec::new();
            collect_chains(inner, &mut inner_chains)?;
            for chain in inner_chains {
                out.push(Formula::Diamond {
                    action: action.clone(),
                    threshold: threshold.clone(),
                    inner: Box::new(chain),
                });
            }
            Ok(())
        }
        Formula::Not(_) | Formula::Can(_) | Formula::Delta(_) => Err(LmpError::UnsupportedFragment(
            "normal form is defined for the core fragment (T, &, diamonds, eps>=)".into(),
        )),
    }
}

/// Embed the state logic into the distribution logic by replacing every
/// `<a>st q` with `<a>q`.
pub fn embed_state_formula(formula: &StateFormula) -> Formula {
    match formula {
        StateFormula::True => Formula::True,
        StateFormula::And(parts) => Formula::And(parts.iter().map(embed_state_formula).collect()),
        StateFormula::DiamondSt {
            action,
            threshold,
            inner,
        } => Formula::Diamond {
            action: action.clone(),
            threshold: threshold.clone(),
            inner: Box::new(embed_state_formula(inner)),
        },
    }
}

/// Synthesize a formula separating two subdistributions, or `None` when
/// they are bisimilar.
///
/// The witness word `a1..ak` becomes `<a1>0 ... <ak>q T` (or `eps>=q` for
/// the empty word), with `q` the midpoint of the two differing trace
/// masses, so exactly the side with the larger mass satisfies it.
pub fn find_distinguishing_formula(
    lmp: &FiniteLmp<Rational>,
    mu: &SubDist<Rational>,
    nu: &SubDist<Rational>,
) -> Result<Option<Formula>> {
    let basis = SpanBasis::new(lmp);
    distinguishing_from_basis(&basis, mu, nu)
}

/// Same as [`find_distinguishing_formula`] against a prebuilt basis.
pub fn distinguishing_from_basis(
    basis: &SpanBasis<'_>,
    mu: &SubDist<Rational>,
    nu: &SubDist<Rational>,
) -> Result<Option<Formula>> {
    let Some(witness) = basis.witness(mu, nu)? else {
        return Ok(None);
    };
    let two = Rational::from_integer(2.into());
    let midpoint = (&witness.mass_left + &witness.mass_right) / two;
    Ok(Some(Formula::threshold_chain(&witness.word, midpoint)))
}

/// Evaluate a quantitative formula; the result lies in `[0, 1]`.
pub fn eval_qformula<S: Scalar>(
    lmp: &FiniteLmp<S>,
    mu: &SubDist<S>,
    formula: &QFormula,
    discount: &S,
) -> Result<S> {
    if !(*discount > S::zero() && *discount <= S::one()) {
        return Err(LmpError::InvalidDiscount);
    }
    if mu.len() != lmp.state_count() {
        return Err(LmpError::DimensionMismatch(format!(
            "subdistribution has length {}, model has {} states",
            mu.len(),
            lmp.state_count()
        )));
    }
    eval_q(lmp, mu, formula, discount)
}

fn eval_q<S: Scalar>(
    lmp: &FiniteLmp<S>,
    mu: &SubDist<S>,
    formula: &QFormula,
    discount: &S,
) -> Result<S> {
    match formula {
        QFormula::One => Ok(mu.total()),
        QFormula::OPlus(base, p) => {
            let raised = eval_q(lmp, mu, base, discount)?.add(&S::from_rational(p));
            Ok(if raised <= S::one() { raised } else { S::one() })
        }
        QFormula::Neg(inner) => Ok(S::one().sub(&eval_q(lmp, mu, inner, discount)?)),
        QFormula::Conj(parts) => {
            let mut best = S::one();
            for part in parts {
                let value = eval_q(lmp, mu, part, discount)?;
                if value < best {
                    best = value;
                }
            }
            Ok(best)
        }
        QFormula::DiamondC(action, inner) => {
            let a = lmp.action_id(action)?;
            let successor = lift_step_id(lmp, mu, a);
            Ok(discount.mul(&eval_q(lmp, &successor, inner, discount)?))
        }
    }
}

/// Lower bound on the logical distance: the largest `|phi(mu) - phi(nu)|`
/// over the supplied formulas.
///
/// Never exceeds the trace distance at the same discount; over the chain
/// formulas of all words up to a horizon it attains the truncated trace
/// distance exactly.
pub fn logical_distance_lower<S: Scalar>(
    lmp: &FiniteLmp<S>,
    mu: &SubDist<S>,
    nu: &SubDist<S>,
    discount: &S,
    formulas: &[QFormula],
) -> Result<S> {
    if !(*discount > S::zero() && *discount <= S::one()) {
        return Err(LmpError::InvalidDiscount);
    }
    let mut best = S::zero();
    for formula in formulas {
        let left = eval_qformula(lmp, mu, formula, discount)?;
        let right = eval_qformula(lmp, nu, formula, discount)?;
        let gap = left.abs_diff(&right);
        if gap > best {
            best = gap;
        }
    }
    Ok(best)
}
