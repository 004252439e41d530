//! The lifted transition relation on subdistributions.
//!
//! A state-level kernel acts on a subdistribution by integration, which on
//! finite models is a vector-matrix product: the successor of `mu` under
//! action `a` assigns `sum_s mu(s) * tau_a(s, {t})` to state `t`. Words act
//! by folding single steps left to right; the empty word is the identity.
//!
//! This module is deliberately minimal and unmemoized so it can serve as
//! the oracle for the equivalence machinery, which keeps its own caches.

use crate::error::Result;
use crate::model::{FiniteLmp, SubDist, Word};
use crate::num::Scalar;

/// One lifted step `mu -a-> mu'`.
///
/// The successor's total mass never exceeds the argument's.
pub fn lift_step<S: Scalar>(
    lmp: &FiniteLmp<S>,
    mu: &SubDist<S>,
    action: &str,
) -> Result<SubDist<S>> {
    let a = lmp.action_id(action)?;
    check_dim(lmp, mu)?;
    Ok(lift_step_id(lmp, mu, a))
}

pub(crate) fn lift_step_id<S: Scalar>(
    lmp: &FiniteLmp<S>,
    mu: &SubDist<S>,
    action: usize,
) -> SubDist<S> {
    SubDist::from_raw(lmp.matrix(action).apply_left(mu.as_slice()))
}

/// Run a whole word: `run_word(mu, eps) = mu`, then fold `lift_step`.
pub fn run_word<S: Scalar>(lmp: &FiniteLmp<S>, mu: &SubDist<S>, word: &Word) -> Result<SubDist<S>> {
    check_dim(lmp, mu)?;
    let ids = lmp.word_ids(word)?;
    let mut current = mu.clone();
    for a in ids {
        current = lift_step_id(lmp, &current, a);
    }
    Ok(current)
}

/// Total surviving mass after running `word` from `mu`.
///
/// Nonincreasing under word extension: appending an action can only lose
/// mass.
pub fn trace_mass<S: Scalar>(lmp: &FiniteLmp<S>, mu: &SubDist<S>, word: &Word) -> Result<S> {
    Ok(run_word(lmp, mu, word)?.total())
}

fn check_dim<S: Scalar>(lmp: &FiniteLmp<S>, mu: &SubDist<S>) -> Result<()> {
    if mu.len() != lmp.state_count() {
        return Err(crate::error::LmpError::DimensionMismatch(format!(
            "subdistribution has length {}, model has {} states",
            mu.len(),
            lmp.state_count()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::SubDist;
    use crate::num::{parse_rational, Rational};

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn word(s: &str) -> Word {
        s.chars().map(|c| c.to_string()).collect()
    }

    /// Independent oracle: sum path products over explicit state sequences.
    fn path_mass(
        lmp: &FiniteLmp<Rational>,
        mu: &SubDist<Rational>,
        word: &Word,
        target: usize,
    ) -> Rational {
        fn go(
            lmp: &FiniteLmp<Rational>,
            state: usize,
            rest: &[String],
            target: usize,
        ) -> Rational {
            if rest.is_empty() {
                return if state == target { r("1") } else { r("0") };
            }
            let states: Vec<String> = lmp.states().to_vec();
            let mut acc = r("0");
            for (next, next_name) in states.iter().enumerate() {
                let edge = lmp.rate(&rest[0], &states[state], next_name).unwrap();
                if !edge.is_zero() {
                    acc += edge * go(lmp, next, &rest[1..], target);
                }
            }
            acc
        }
        let mut acc = r("0");
        for (s, mass) in mu.iter().enumerate() {
            if !mass.is_zero() {
                acc += mass.clone() * go(lmp, s, &word.0, target);
            }
        }
        acc
    }

    #[test]
    fn single_steps_match_the_figure() {
        let lmp = fixtures::fig1();
        let from_s1 = lift_step(&lmp, &lmp.dirac("s1").unwrap(), "a").unwrap();
        assert_eq!(*from_s1.get(lmp.state_id("s2").unwrap()), r("1/2"));
        assert_eq!(*from_s1.get(lmp.state_id("s3").unwrap()), r("1/2"));
        assert_eq!(from_s1.total(), r("1"));

        let from_t0 = lift_step(&lmp, &lmp.dirac("t0").unwrap(), "a").unwrap();
        assert_eq!(*from_t0.get(lmp.state_id("t1").unwrap()), r("1/2"));
        assert_eq!(*from_t0.get(lmp.state_id("t2").unwrap()), r("1/2"));

        let zero = SubDist::zero(lmp.state_count());
        let stepped = lift_step(&lmp, &zero, "a").unwrap();
        assert_eq!(stepped.total(), r("0"));
    }

    #[test]
    fn run_word_folds_steps() {
        let lmp = fixtures::fig1();
        let mu = lmp.dirac("s0").unwrap();

        let aa = run_word(&lmp, &mu, &word("aa")).unwrap();
        assert_eq!(*aa.get(lmp.state_id("s2").unwrap()), r("1/2"));
        assert_eq!(*aa.get(lmp.state_id("s3").unwrap()), r("1/2"));
        assert_eq!(aa.total(), r("1"));

        let eps = run_word(&lmp, &mu, &Word::empty()).unwrap();
        assert_eq!(eps, mu);

        let aaa = run_word(&lmp, &lmp.dirac("t0").unwrap(), &word("aaa")).unwrap();
        assert_eq!(*aaa.get(lmp.state_id("t3").unwrap()), r("1/6"));
        assert_eq!(*aaa.get(lmp.state_id("t6").unwrap()), r("1/3"));
        assert_eq!(aaa.total(), r("1/2"));
        // Cross-check one entry against the path-enumeration oracle.
        assert_eq!(
            path_mass(&lmp, &lmp.dirac("t0").unwrap(), &word("aaa"), lmp.state_id("t3").unwrap()),
            r("1/6")
        );
    }

    #[test]
    fn trace_masses_agree_on_both_sides_of_the_figure() {
        let lmp = fixtures::fig1();
        let s0 = lmp.dirac("s0").unwrap();
        let t0 = lmp.dirac("t0").unwrap();
        assert_eq!(trace_mass(&lmp, &s0, &word("aaa")).unwrap(), r("1/2"));
        assert_eq!(trace_mass(&lmp, &t0, &word("aaa")).unwrap(), r("1/2"));
        assert_eq!(trace_mass(&lmp, &s0, &Word::empty()).unwrap(), r("1"));
    }

    #[test]
    fn unknown_action_is_reported() {
        let lmp = fixtures::fig1();
        let mu = lmp.dirac("s0").unwrap();
        assert!(lift_step(&lmp, &mu, "b").is_err());
        assert!(run_word(&lmp, &mu, &word("ab")).is_err());
    }
}
