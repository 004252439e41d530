//! Core data types: finite labelled Markov processes, subdistributions
//! over their state set, and words over the action alphabet.
//!
//! A finite LMP is a state list, an action list, one subprobability matrix
//! per action (row `s`, column `t` is the mass moved from `s` to `t`), and
//! an initial distribution of total mass one. Row sums strictly below one
//! are meaningful: the missing mass is the probability of halting, and the
//! trace pseudometric measures exactly that loss. No dead-state completion
//! is performed.
//!
//! States are identified by name; indices are an internal detail. All
//! values are immutable after construction and every operation is a pure
//! function, so concurrent use is safe.

use std::collections::HashMap;
use std::fmt;

use crate::error::{LmpError, Result};
use crate::num::Scalar;

/// Transition matrix with sparse rows, indexed `[row][..] = (col, mass)`.
///
/// Rows keep entries sorted by column and omit zeros.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct SparseMatrix<S> {
    pub(crate) dim: usize,
    pub(crate) rows: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub(crate) fn from_rows(rows: Vec<Vec<(usize, S)>>) -> Self {
        let dim = rows.len();
        let mut rows = rows;
        for row in &mut rows {
            row.retain(|(_, v)| !v.is_zero());
            row.sort_by_key(|(c, _)| *c);
        }
        SparseMatrix { dim, rows }
    }

    pub(crate) fn from_dense(rows: &[Vec<S>]) -> Self {
        let sparse = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            dim: rows.len(),
            rows: sparse,
        }
    }

    pub(crate) fn get(&self, row: usize, col: usize) -> S {
        self.rows[row]
            .iter()
            .find(|(c, _)| *c == col)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(S::zero)
    }

    pub(crate) fn row_sum(&self, row: usize) -> S {
        self.rows[row]
            .iter()
            .fold(S::zero(), |acc, (_, v)| acc.add(v))
    }

    /// Right multiplication `M * v`, the backward step on word functionals.
    pub(crate) fn apply(&self, v: &[S]) -> Vec<S> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(S::zero(), |acc, (c, m)| acc.add(&m.mul(&v[*c])))
            })
            .collect()
    }

    /// Left multiplication `mu * M`, the forward step on subdistributions.
    pub(crate) fn apply_left(&self, mu: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (s, mass) in mu.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            for (t, m) in &self.rows[s] {
                out[*t] = out[*t].add(&mass.mul(m));
            }
        }
        out
    }
}

/// A subdistribution over a model's state set: nonnegative entries with
/// total mass at most one.
#[derive(Debug, Clone, PartialEq)]
pub struct SubDist<S: Scalar> {
    mass: Vec<S>,
}

impl<S: Scalar> SubDist<S> {
    /// Validate and wrap a mass vector.
    pub fn new(mass: Vec<S>) -> Result<Self> {
        for (i, m) in mass.iter().enumerate() {
            if *m < S::zero() {
                return Err(LmpError::Invariant(format!(
                    "subdistribution entry {i} is negative: {m}"
                )));
            }
        }
        let total = mass.iter().fold(S::zero(), |acc, m| acc.add(m));
        if !total.le_with_slack(&S::one()) {
            return Err(LmpError::MassExceeded(format!(
                "total mass {total} exceeds 1"
            )));
        }
        Ok(SubDist { mass })
    }

    /// The all-zero subdistribution.
    pub fn zero(dim: usize) -> Self {
        SubDist {
            mass: vec![S::zero(); dim],
        }
    }

    /// Weighted sum `sum_i a_i * mu_i` of subdistributions.
    ///
    /// `dim` fixes the dimension so the empty sum is well defined. Fails
    /// with `MassExceeded` if the combined mass is above one.
    pub fn mix(dim: usize, parts: &[(S, SubDist<S>)]) -> Result<Self> {
        let mut mass = vec![S::zero(); dim];
        for (coeff, part) in parts {
            if *coeff < S::zero() {
                return Err(LmpError::Invariant(format!(
                    "mix coefficient is negative: {coeff}"
                )));
            }
            if part.len() != dim {
                return Err(LmpError::DimensionMismatch(format!(
                    "mix component has length {}, expected {dim}",
                    part.len()
                )));
            }
            for (acc, m) in mass.iter_mut().zip(part.iter()) {
                *acc = acc.add(&coeff.mul(m));
            }
        }
        SubDist::new(mass)
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &S> {
        self.mass.iter()
    }

    pub fn get(&self, index: usize) -> &S {
        &self.mass[index]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.mass
    }

    /// Total mass `mu(S)`.
    pub fn total(&self) -> S {
        self.mass.iter().fold(S::zero(), |acc, m| acc.add(m))
    }

    pub(crate) fn from_raw(mass: Vec<S>) -> Self {
        SubDist { mass }
    }
}

/// A finite word over the action alphabet; the empty word is epsilon.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<String>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T: Into<String>> FromIterator<T> for Word {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Word(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        if self.0.iter().all(|a| a.chars().count() == 1) {
            write!(f, "{}", self.0.concat())
        } else {
            write!(f, "{}", self.0.join(" "))
        }
    }
}

/// A finite labelled Markov process with an initial distribution.
#[derive(Debug, Clone)]
pub struct FiniteLmp<S: Scalar> {
    states: Vec<String>,
    state_index: HashMap<String, usize>,
    actions: Vec<String>,
    action_index: HashMap<String, usize>,
    trans: Vec<SparseMatrix<S>>,
    initial: SubDist<S>,
}

impl<S: Scalar> FiniteLmp<S> {
    /// Build a model from dense transition rows, one matrix per action in
    /// the order of `actions`. All type invariants are checked.
    pub fn from_dense(
        states: Vec<String>,
        actions: Vec<String>,
        matrices: Vec<Vec<Vec<S>>>,
        initial: Vec<S>,
    ) -> Result<Self> {
        let sparse = matrices
            .iter()
            .map(|m| SparseMatrix::from_dense(m))
            .collect();
        Self::build(states, actions, sparse, initial, Some(matrices))
    }

    /// Build a model from sparse rows `(target, mass)` per state per action.
    pub fn from_sparse(
        states: Vec<String>,
        actions: Vec<String>,
        matrices: Vec<Vec<Vec<(usize, S)>>>,
        initial: Vec<S>,
    ) -> Result<Self> {
        let sparse = matrices.into_iter().map(SparseMatrix::from_rows).collect();
        Self::build(states, actions, sparse, initial, None)
    }

    fn build(
        states: Vec<String>,
        actions: Vec<String>,
        trans: Vec<SparseMatrix<S>>,
        initial: Vec<S>,
        dense: Option<Vec<Vec<Vec<S>>>>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(LmpError::Invariant("state list is empty".into()));
        }
        if actions.is_empty() {
            return Err(LmpError::Invariant("action list is empty".into()));
        }
        let mut state_index = HashMap::new();
        for (i, name) in states.iter().enumerate() {
            if name.is_empty() {
                return Err(LmpError::Invariant(format!("state {i} has an empty name")));
            }
            if state_index.insert(name.clone(), i).is_some() {
                return Err(LmpError::Invariant(format!("duplicate state name `{name}`")));
            }
        }
        let mut action_index = HashMap::new();
        for (i, name) in actions.iter().enumerate() {
            if name.is_empty() {
                return Err(LmpError::Invariant(format!("action {i} has an empty label")));
            }
            if action_index.insert(name.clone(), i).is_some() {
                return Err(LmpError::Invariant(format!(
                    "duplicate action label `{name}`"
                )));
            }
        }
        if trans.len() != actions.len() {
            return Err(LmpError::DimensionMismatch(format!(
                "{} matrices for {} actions",
                trans.len(),
                actions.len()
            )));
        }
        for (a, matrix) in trans.iter().enumerate() {
            if matrix.rows.len() != n {
                return Err(LmpError::DimensionMismatch(format!(
                    "action `{}` has {} rows, expected {n}",
                    actions[a],
                    matrix.rows.len()
                )));
            }
            // Shape errors in dense input surface before value checks.
            if let Some(dense) = &dense {
                for (s, row) in dense[a].iter().enumerate() {
                    if row.len() != n {
                        return Err(LmpError::DimensionMismatch(format!(
                            "action `{}` row {s} has {} columns, expected {n}",
                            actions[a],
                            row.len()
                        )));
                    }
                }
            }
            for (s, row) in matrix.rows.iter().enumerate() {
                for (t, mass) in row {
                    if *t >= n {
                        return Err(LmpError::DimensionMismatch(format!(
                            "action `{}` row {s} targets column {t}, expected < {n}",
                            actions[a]
                        )));
                    }
                    if *mass < S::zero() || !mass.le_with_slack(&S::one()) {
                        return Err(LmpError::Invariant(format!(
                            "action `{}` entry ({s}, {t}) = {mass} is outside [0, 1]",
                            actions[a]
                        )));
                    }
                }
                let sum = matrix.row_sum(s);
                if !sum.le_with_slack(&S::one()) {
                    return Err(LmpError::Invariant(format!(
                        "action `{}` row {s} (state `{}`) sums to {sum} > 1",
                        actions[a], states[s]
                    )));
                }
            }
        }
        if initial.len() != n {
            return Err(LmpError::DimensionMismatch(format!(
                "initial vector has length {}, expected {n}",
                initial.len()
            )));
        }
        let initial = SubDist::new(initial)?;
        let total = initial.total();
        if !total.eq_with_slack(&S::one()) {
            return Err(LmpError::Invariant(format!(
                "initial distribution has total mass {total}, expected exactly 1"
            )));
        }
        Ok(FiniteLmp {
            states,
            state_index,
            actions,
            action_index,
            trans,
            initial,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn initial(&self) -> &SubDist<S> {
        &self.initial
    }

    pub fn state_id(&self, name: &str) -> Result<usize> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| LmpError::UnknownState(name.to_string()))
    }

    pub fn action_id(&self, label: &str) -> Result<usize> {
        self.action_index
            .get(label)
            .copied()
            .ok_or_else(|| LmpError::UnknownAction(label.to_string()))
    }

    /// Transition mass `tau_a(s, {t})` by state and action names.
    pub fn rate(&self, action: &str, from: &str, to: &str) -> Result<S> {
        let a = self.action_id(action)?;
        let s = self.state_id(from)?;
        let t = self.state_id(to)?;
        Ok(self.trans[a].get(s, t))
    }

    /// Point mass at a named state.
    pub fn dirac(&self, state: &str) -> Result<SubDist<S>> {
        let index = self.state_id(state)?;
        let mut mass = vec![S::zero(); self.state_count()];
        mass[index] = S::one();
        Ok(SubDist::from_raw(mass))
    }

    pub(crate) fn matrix(&self, action: usize) -> &SparseMatrix<S> {
        &self.trans[action]
    }

    /// Resolve a word of action labels to internal action ids.
    pub(crate) fn word_ids(&self, word: &Word) -> Result<Vec<usize>> {
        word.0.iter().map(|a| self.action_id(a)).collect()
    }
}
