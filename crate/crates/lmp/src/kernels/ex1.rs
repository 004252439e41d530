//! Exact discretization of the unit-interval kernel with two atoms.
//!
//! The continuous process on `[0, 1]` has one action. From the atom `0`
//! the successor is half the Lebesgue measure; from the atom `1` it has
//! density `(x + 1/2) / 2`; from an interior point `s` the process moves
//! mass `s/2` onto each atom and halts otherwise.
//!
//! The interval `(0, 1)` is split into `N` equal cells, and each cell is
//! represented by *two* rational quadrature nodes rather than a single
//! representative. On a cell of width `h` centred at `m`, the nodes
//! `m + h/4` and `m - h/3` with weights `4h/7` and `3h/7` integrate every
//! quadratic polynomial exactly. Every density reachable from the atoms
//! is affine per cell and the interior kernel is affine in `s`, so all
//! two-step products are quadratic and the discretization reproduces the
//! continuous trace masses exactly, independent of `N`. A single node per
//! cell cannot do this: it fixes only the cell's zeroth moment, and the
//! two-step mass from atom `1` then misses the exact value by the
//! second-moment defect `sum_k |C_k|^3 / 48`.

use crate::error::{LmpError, Result};
use crate::model::FiniteLmp;
use crate::num::Rational;

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Build the exact `N`-cell discretization; states are the atoms `0` and
/// `1` plus two nodes `c<k>a`, `c<k>b` per cell. The initial distribution
/// is the point mass at atom `0`.
pub fn make_ex1(cells: usize) -> Result<FiniteLmp<Rational>> {
    if cells < 2 {
        return Err(LmpError::InvalidGrid(format!(
            "need at least 2 cells, got {cells}"
        )));
    }
    let n_cells = cells as i64;
    let mut states = vec!["0".to_string(), "1".to_string()];
    // Node positions and weights per cell, exact for quadratics.
    let mut nodes: Vec<(Rational, Rational)> = Vec::with_capacity(2 * cells);
    for k in 1..=n_cells {
        states.push(format!("c{k}a"));
        states.push(format!("c{k}b"));
        let midpoint = ratio(2 * k - 1, 2 * n_cells);
        let h = ratio(1, n_cells);
        nodes.push((&midpoint + &h * ratio(1, 4), &h * ratio(4, 7)));
        nodes.push((&midpoint - &h * ratio(1, 3), &h * ratio(3, 7)));
    }

    let n = states.len();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(n);
    // Atom 0: half the uniform density, as node masses.
    rows.push(
        nodes
            .iter()
            .enumerate()
            .map(|(i, (_, w))| (2 + i, ratio(1, 2) * w))
            .collect(),
    );
    // Atom 1: density (x + 1/2) / 2 evaluated at the nodes.
    rows.push(
        nodes
            .iter()
            .enumerate()
            .map(|(i, (g, w))| (2 + i, ratio(1, 2) * (g + ratio(1, 2)) * w))
            .collect(),
    );
    // Interior node at position g: mass g/2 onto each atom, rest halts.
    for (g, _) in &nodes {
        let half = g * ratio(1, 2);
        rows.push(vec![(0, half.clone()), (1, half)]);
    }

    let mut initial = vec![ratio(0, 1); n];
    initial[0] = ratio(1, 1);
    FiniteLmp::from_sparse(states, vec!["a".into()], vec![rows], initial)
}
