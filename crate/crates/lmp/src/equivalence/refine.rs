//! State bisimulation by partition refinement.
//!
//! Two states are state-bisimilar when they move with equal mass into
//! every union of equivalence classes, for every action. On finite spaces
//! it suffices to compare the mass into each block of the current
//! partition (closed unions follow by additivity), so the classic
//! refinement loop applies: split blocks by transition-mass signatures
//! until stable. Exact arithmetic is required because the splits are
//! equality decisions.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{LmpError, Result};
use crate::model::{FiniteLmp, SubDist};
use crate::num::Rational;

use super::span::SpanBasis;

/// Disjoint nonempty blocks covering all states, each sorted, ordered by
/// their least state index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `state`.
    pub fn block_of(&self, state: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&state).is_ok())
            .expect("partition covers all states")
    }

    /// Whether two states share a block.
    pub fn same_block(&self, s: usize, t: usize) -> bool {
        self.block_of(s) == self.block_of(t)
    }

    /// Blocks as state names.
    pub fn named_blocks<S: crate::num::Scalar>(&self, lmp: &FiniteLmp<S>) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&s| lmp.states()[s].clone()).collect())
            .collect()
    }
}

/// Coarsest partition in which same-block states have equal transition
/// mass into every block, for every action.
pub fn state_bisim_partition(lmp: &FiniteLmp<Rational>) -> Partition {
    let n = lmp.state_count();
    let n_actions = lmp.actions().len();
    let mut blocks: Vec<Vec<usize>> = vec![(0..n).collect()];

    loop {
        let mut block_of = vec![0usize; n];
        for (b, block) in blocks.iter().enumerate() {
            for &s in block {
                block_of[s] = b;
            }
        }
        let signature = |s: usize| -> Vec<Vec<Rational>> {
            (0..n_actions)
                .map(|a| {
                    let mut masses = vec![Rational::zero(); blocks.len()];
                    for (t, m) in &lmp.matrix(a).rows[s] {
                        masses[block_of[*t]] += m;
                    }
                    masses
                })
                .collect()
        };

        let mut next: Vec<Vec<usize>> = Vec::new();
        for block in &blocks {
            let mut groups: BTreeMap<Vec<Vec<Rational>>, Vec<usize>> = BTreeMap::new();
            for &s in block {
                groups.entry(signature(s)).or_default().push(s);
            }
            next.extend(groups.into_values());
        }
        next.sort_by_key(|b| b[0]);
        if next.len() == blocks.len() {
            return Partition { blocks: next };
        }
        blocks = next;
    }
}

/// Check that state bisimilarity implies subdistribution bisimilarity of
/// the corresponding point masses.
///
/// Returns every same-block pair after verifying it with the exact
/// decision procedure. A counterexample would contradict the theory and
/// therefore signals an implementation bug; it is reported as
/// `TheoremViolation`.
pub fn check_state_implies_dist(lmp: &FiniteLmp<Rational>) -> Result<Vec<(String, String)>> {
    let partition = state_bisim_partition(lmp);
    let basis = SpanBasis::new(lmp);
    let mut verified = Vec::new();
    for block in partition.blocks() {
        for (i, &s) in block.iter().enumerate() {
            for &t in &block[i + 1..] {
                let ds = dirac_at(lmp, s);
                let dt = dirac_at(lmp, t);
                if !basis.equivalent(&ds, &dt)? {
                    return Err(LmpError::TheoremViolation(format!(
                        "states `{}` and `{}` are state-bisimilar but their point \
                         masses are not trace equivalent",
                        lmp.states()[s],
                        lmp.states()[t]
                    )));
                }
                verified.push((lmp.states()[s].clone(), lmp.states()[t].clone()));
            }
        }
    }
    Ok(verified)
}

fn dirac_at(lmp: &FiniteLmp<Rational>, s: usize) -> SubDist<Rational> {
    lmp.dirac(&lmp.states()[s]).expect("index comes from the model")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn figure_partition_separates_the_roots() {
        let lmp = fixtures::fig1();
        let partition = state_bisim_partition(&lmp);
        let id = |name: &str| lmp.state_id(name).unwrap();
        assert!(!partition.same_block(id("s0"), id("t0")));
        // Absorbing full-loop states coincide, as do the dead states.
        assert!(partition.same_block(id("s2"), id("t3")));
        assert!(partition.same_block(id("s2"), id("t6")));
        assert!(partition.same_block(id("s3"), id("t4")));
        assert!(partition.same_block(id("s3"), id("t5")));
        assert_eq!(partition.block_count(), 7);
    }

    #[test]
    fn identical_rows_share_a_block() {
        let lmp = crate::random::random_lmp_with_twins(11, 4, 2, 2);
        let partition = state_bisim_partition(&lmp);
        assert!(partition.block_count() < lmp.state_count());
    }

    #[test]
    fn single_state_model_is_one_block() {
        let lmp = fixtures::single_loop("1/2");
        let partition = state_bisim_partition(&lmp);
        assert_eq!(partition.block_count(), 1);
    }

    #[test]
    fn same_block_pairs_are_trace_equivalent_on_the_figure() {
        let lmp = fixtures::fig1();
        let verified = check_state_implies_dist(&lmp).unwrap();
        assert!(verified.len() >= 6);
    }
}
