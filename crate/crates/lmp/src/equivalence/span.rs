//! Exact decision of subdistribution bisimilarity.
//!
//! On these models subdistribution bisimilarity coincides with trace
//! equivalence: `mu ~ nu` iff every word yields the same surviving mass.
//! The decision works backwards: the word `w = a1..ak` defines the
//! functional `beta_w = M_a1 * ... * M_ak * 1`, and the trace mass from
//! `mu` is the inner product `<mu, beta_w>`. The functionals span a
//! subspace of dimension at most `n`, so a basis is reached after
//! exploring words of length below `n`, and `mu ~ nu` iff `mu - nu` is
//! orthogonal to that basis.
//!
//! Exploration is breadth first in (length, lexicographic) order with
//! children prepended (`beta_{a w} = M_a beta_w`), so the first explored
//! word on which the masses differ is the canonically least witness. The
//! basis is independent of the queried pair, so one `SpanBasis` amortizes
//! over any number of queries against the same model.

use num_traits::Zero;

use crate::error::{LmpError, Result};
use crate::model::{FiniteLmp, SubDist, Word};
use crate::num::Rational;

/// Witness of inequivalence: the least word on which trace masses differ.
#[derive(Debug, Clone)]
pub struct TraceWitness {
    pub word: Word,
    pub mass_left: Rational,
    pub mass_right: Rational,
}

/// Basis of the space spanned by backward word functionals of one model.
pub struct SpanBasis<'a> {
    lmp: &'a FiniteLmp<Rational>,
    /// All explored `(word, functional)` pairs in canonical order. Words
    /// are stored as action-id sequences.
    explored: Vec<(Vec<usize>, Vec<Rational>)>,
    /// Echelon rows of the basis, each normalized with a leading one at
    /// its pivot column and reduced against all earlier rows.
    basis: Vec<(usize, Vec<Rational>)>,
}

impl<'a> SpanBasis<'a> {
    pub fn new(lmp: &'a FiniteLmp<Rational>) -> Self {
        let n = lmp.state_count();
        let n_actions = lmp.actions().len();
        let mut explored: Vec<(Vec<usize>, Vec<Rational>)> = Vec::new();
        let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();

        let ones = vec![Rational::from_integer(1.into()); n];
        let mut layer: Vec<usize> = Vec::new();
        explored.push((Vec::new(), ones));
        if let Some(row) = reduce(&basis, explored[0].1.clone()) {
            basis.push(row);
            layer.push(0);
        }

        while !layer.is_empty() && basis.len() < n {
            let mut next_layer = Vec::new();
            // Action-major expansion keeps each layer in lexicographic
            // order, which makes witnesses canonical.
            for a in 0..n_actions {
                for &parent in &layer {
                    let mut word = Vec::with_capacity(explored[parent].0.len() + 1);
                    word.push(a);
                    word.extend_from_slice(&explored[parent].0);
                    let vector = lmp.matrix(a).apply(&explored[parent].1);
                    let index = explored.len();
                    let independent = reduce(&basis, vector.clone());
                    explored.push((word, vector));
                    if let Some(row) = independent {
                        basis.push(row);
                        next_layer.push(index);
                    }
                }
            }
            layer = next_layer;
        }

        SpanBasis {
            lmp,
            explored,
            basis,
        }
    }

    /// Number of independent word functionals.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Whether `mu` and `nu` have equal trace mass on every word.
    pub fn equivalent(&self, mu: &SubDist<Rational>, nu: &SubDist<Rational>) -> Result<bool> {
        self.check_dims(mu, nu)?;
        Ok(self
            .basis
            .iter()
            .all(|(_, row)| gap(mu, nu, row).is_zero()))
    }

    /// The canonically least witness word, or `None` when equivalent.
    pub fn witness(
        &self,
        mu: &SubDist<Rational>,
        nu: &SubDist<Rational>,
    ) -> Result<Option<TraceWitness>> {
        if self.equivalent(mu, nu)? {
            return Ok(None);
        }
        for (word, vector) in &self.explored {
            if !gap(mu, nu, vector).is_zero() {
                let labels: Word = word
                    .iter()
                    .map(|&a| self.lmp.actions()[a].clone())
                    .collect();
                return Ok(Some(TraceWitness {
                    word: labels,
                    mass_left: dot(mu.as_slice(), vector),
                    mass_right: dot(nu.as_slice(), vector),
                }));
            }
        }
        unreachable!("a nonzero basis gap always appears on an explored word")
    }

    fn check_dims(&self, mu: &SubDist<Rational>, nu: &SubDist<Rational>) -> Result<()> {
        let n = self.lmp.state_count();
        if mu.len() != n || nu.len() != n {
            return Err(LmpError::DimensionMismatch(format!(
                "subdistributions of length {} and {} against {n} states",
                mu.len(),
                nu.len()
            )));
        }
        Ok(())
    }
}

fn dot(mu: &[Rational], v: &[Rational]) -> Rational {
    mu.iter()
        .zip(v)
        .filter(|(m, _)| !m.is_zero())
        .map(|(m, x)| m * x)
        .sum()
}

fn gap(mu: &SubDist<Rational>, nu: &SubDist<Rational>, v: &[Rational]) -> Rational {
    dot(mu.as_slice(), v) - dot(nu.as_slice(), v)
}

/// Reduce `v` against the echelon basis; `Some` carries the normalized new
/// row when `v` is independent.
fn reduce(basis: &[(usize, Vec<Rational>)], mut v: Vec<Rational>) -> Option<(usize, Vec<Rational>)> {
    for (pivot, row) in basis {
        let coeff = v[*pivot].clone();
        if coeff.is_zero() {
            continue;
        }
        for (x, r) in v.iter_mut().zip(row) {
            *x -= &coeff * r;
        }
    }
    let pivot = v.iter().position(|x| !x.is_zero())?;
    let lead = v[pivot].clone();
    for x in v.iter_mut() {
        *x /= &lead;
    }
    Some((pivot, v))
}

/// Decide subdistribution bisimilarity of `mu` and `nu` exactly.
pub fn decide_dbisim(
    lmp: &FiniteLmp<Rational>,
    mu: &SubDist<Rational>,
    nu: &SubDist<Rational>,
) -> Result<bool> {
    SpanBasis::new(lmp).equivalent(mu, nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::num::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn figure_point_masses_are_equivalent() {
        let lmp = fixtures::fig1();
        let s0 = lmp.dirac("s0").unwrap();
        let t0 = lmp.dirac("t0").unwrap();
        assert!(decide_dbisim(&lmp, &s0, &t0).unwrap());
        assert!(decide_dbisim(&lmp, &s0, &s0).unwrap());
    }

    #[test]
    fn unequal_loop_rates_are_distinguished() {
        let lmp = fixtures::half_loop();
        let s = lmp.dirac("s").unwrap();
        let t = lmp.dirac("t").unwrap();
        assert!(!decide_dbisim(&lmp, &s, &t).unwrap());

        let witness = SpanBasis::new(&lmp).witness(&s, &t).unwrap().unwrap();
        assert_eq!(witness.word.to_string(), "a");
        assert_eq!(witness.mass_left, r("1"));
        assert_eq!(witness.mass_right, r("1/2"));
    }

    #[test]
    fn witness_is_shorter_than_the_state_count() {
        let lmp = fixtures::fig1();
        let basis = SpanBasis::new(&lmp);
        let s1 = lmp.dirac("s1").unwrap();
        let t1 = lmp.dirac("t1").unwrap();
        if let Some(w) = basis.witness(&s1, &t1).unwrap() {
            assert!(w.word.len() < lmp.state_count());
            assert_ne!(w.mass_left, w.mass_right);
        }
    }

    #[test]
    fn related_mixture_from_the_figure_is_equivalent() {
        // delta_{s1} pairs with the even mixture of t1 and t2.
        let lmp = fixtures::fig1();
        let s1 = lmp.dirac("s1").unwrap();
        let mix = SubDist::mix(
            lmp.state_count(),
            &[
                (r("1/2"), lmp.dirac("t1").unwrap()),
                (r("1/2"), lmp.dirac("t2").unwrap()),
            ],
        )
        .unwrap();
        assert!(decide_dbisim(&lmp, &s1, &mix).unwrap());
    }
}
