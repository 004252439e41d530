//! Exact discretization of the triadic middle-thirds kernel family.
//!
//! The continuous process lives on `[0, 1]`. `E_0` removes the open middle
//! third, and `E_n` removes the middle third of every interval of
//! `E_{n-1}`, so `m(E_i) = (2/3)^(i+1)`. Action `i` spreads every point of
//! `E_i` uniformly over `E_i` with total mass one half — density
//! `(3/2)^(i+1) / 2` — and leaves points outside `E_i` in place.
//!
//! All densities involved are constant on triadic cells of depth `i + 1`,
//! so cutting `[0, 1]` into the `3^depth` cells of depth `depth` is an
//! exact discretization for every action `i < depth`: spread rows put the
//! constant `(3/2)^(i+1) / 2 * 3^(-depth)` on each cell inside `E_i` and
//! sum to one half, stay rows are unit self-loops.
//!
//! A cell of depth `d` lies in `E_i` exactly when none of the first
//! `i + 1` ternary digits of its index equals one.

use crate::error::{LmpError, Result};
use crate::model::{FiniteLmp, SubDist};
use crate::num::Rational;
use num_bigint::BigInt;
use num_traits::One;

fn pow3(exp: usize) -> BigInt {
    BigInt::from(3u32).pow(exp as u32)
}

/// Ternary digits of `index`, most significant first, padded to `depth`.
fn ternary_digits(mut index: usize, depth: usize) -> Vec<u8> {
    let mut digits = vec![0u8; depth];
    for slot in digits.iter_mut().rev() {
        *slot = (index % 3) as u8;
        index /= 3;
    }
    digits
}

fn in_level(digits: &[u8], level: usize) -> bool {
    digits[..=level].iter().all(|&d| d != 1)
}

/// Build the depth-`depth` discretization with actions `a0..a<max_action>`.
///
/// States are named by their ternary digit string; the initial
/// distribution is the point mass on the leftmost cell.
pub fn make_cantor(depth: usize, max_action: usize) -> Result<FiniteLmp<Rational>> {
    if !(1 <= max_action && max_action < depth && depth <= 12) {
        return Err(LmpError::InvalidDepth(format!(
            "need 1 <= max_action < depth <= 12, got depth {depth}, max_action {max_action}"
        )));
    }
    let n = 3usize.pow(depth as u32);
    let states: Vec<String> = (0..n)
        .map(|j| {
            ternary_digits(j, depth)
                .iter()
                .map(|d| char::from(b'0' + d))
                .collect()
        })
        .collect();
    let actions: Vec<String> = (0..=max_action).map(|i| format!("a{i}")).collect();

    let membership: Vec<Vec<bool>> = (0..=max_action)
        .map(|i| {
            (0..n)
                .map(|j| in_level(&ternary_digits(j, depth), i))
                .collect()
        })
        .collect();

    let mut matrices = Vec::with_capacity(actions.len());
    for i in 0..=max_action {
        // Density (3/2)^(i+1) / 2 integrated over one depth-d cell.
        let cell_mass = Rational::new(pow3(i + 1), BigInt::from(2u32).pow(i as u32 + 2) * pow3(depth));
        let spread_row: Vec<(usize, Rational)> = (0..n)
            .filter(|&t| membership[i][t])
            .map(|t| (t, cell_mass.clone()))
            .collect();
        let rows: Vec<Vec<(usize, Rational)>> = (0..n)
            .map(|s| {
                if membership[i][s] {
                    spread_row.clone()
                } else {
                    vec![(s, Rational::one())]
                }
            })
            .collect();
        matrices.push(rows);
    }

    let mut initial = vec![Rational::new(0.into(), 1.into()); n];
    initial[0] = Rational::one();
    FiniteLmp::from_sparse(states, actions, matrices, initial)
}

/// Uniform distribution on `[0, 3^-(level+1)]`: the leftmost
/// `3^(depth-level-1)` cells in equal proportion.
pub fn cantor_uniform_interval(depth: usize, level: usize) -> Result<SubDist<Rational>> {
    check_level(depth, level)?;
    let n = 3usize.pow(depth as u32);
    let covered = 3usize.pow((depth - level - 1) as u32);
    let share = Rational::new(BigInt::one(), BigInt::from(covered));
    let mut mass = vec![Rational::new(0.into(), 1.into()); n];
    for slot in mass.iter_mut().take(covered) {
        *slot = share.clone();
    }
    SubDist::new(mass)
}

/// Uniform distribution on `E_level`.
pub fn cantor_uniform_en(depth: usize, level: usize) -> Result<SubDist<Rational>> {
    check_level(depth, level)?;
    let n = 3usize.pow(depth as u32);
    // Density (3/2)^(level+1) over one cell of width 3^-depth.
    let share = Rational::new(pow3(level + 1), BigInt::from(2u32).pow(level as u32 + 1) * pow3(depth));
    let mut mass = vec![Rational::new(0.into(), 1.into()); n];
    for (j, slot) in mass.iter_mut().enumerate() {
        if in_level(&ternary_digits(j, depth), level) {
            *slot = share.clone();
        }
    }
    SubDist::new(mass)
}

fn check_level(depth: usize, level: usize) -> Result<()> {
    if level >= depth {
        return Err(LmpError::InvalidDepth(format!(
            "level {level} must be below depth {depth}"
        )));
    }
    Ok(())
}
