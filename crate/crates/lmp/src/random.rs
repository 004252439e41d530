//! Seeded random model generation for property tests and the acceptance
//! suites. All generators are deterministic in the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{FiniteLmp, SubDist};
use crate::num::Rational;

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Random exact model with `n_states` states and `n_actions` actions.
///
/// Rows are sparse with small denominators; some rows are left empty and
/// some sum to strictly less than one, so subprobability behaviour is
/// exercised.
pub fn random_lmp(seed: u64, n_states: usize, n_actions: usize) -> FiniteLmp<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<String> = (0..n_states).map(|i| format!("q{i}")).collect();
    let actions: Vec<String> = (0..n_actions)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect();
    let mut matrices = Vec::with_capacity(n_actions);
    for _ in 0..n_actions {
        let mut rows = Vec::with_capacity(n_states);
        for _ in 0..n_states {
            rows.push(random_row(&mut rng, n_states));
        }
        matrices.push(rows);
    }
    let mut initial = vec![ratio(0, 1); n_states];
    initial[0] = ratio(1, 1);
    FiniteLmp::from_sparse(states, actions, matrices, initial).unwrap()
}

fn random_row(rng: &mut ChaCha8Rng, n_states: usize) -> Vec<(usize, Rational)> {
    if rng.gen_bool(0.15) {
        return Vec::new();
    }
    let den = *[6i64, 8, 12].get(rng.gen_range(0..3)).unwrap();
    let targets = rng.gen_range(1..=3.min(n_states));
    let mut remaining = if rng.gen_bool(0.5) { den } else { rng.gen_range(1..=den) };
    let mut row: Vec<(usize, Rational)> = Vec::new();
    for i in 0..targets {
        if remaining == 0 {
            break;
        }
        let share = if i + 1 == targets {
            remaining
        } else {
            rng.gen_range(1..=remaining)
        };
        remaining -= share;
        let target = rng.gen_range(0..n_states);
        if let Some(entry) = row.iter_mut().find(|(t, _)| *t == target) {
            entry.1 += ratio(share, den);
        } else {
            row.push((target, ratio(share, den)));
        }
    }
    row
}

/// Random model in which `twins` extra states duplicate the rows of
/// existing states, guaranteeing nontrivial state-bisimulation blocks.
pub fn random_lmp_with_twins(
    seed: u64,
    n_base: usize,
    n_actions: usize,
    twins: usize,
) -> FiniteLmp<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7317);
    let base = random_lmp(seed, n_base, n_actions);
    let n = n_base + twins;
    let mut states: Vec<String> = base.states().to_vec();
    for i in 0..twins {
        states.push(format!("w{i}"));
    }
    let mut matrices = Vec::new();
    let origins: Vec<usize> = (0..twins).map(|_| rng.gen_range(0..n_base)).collect();
    for action in base.actions() {
        let mut rows = Vec::with_capacity(n);
        for s in 0..n_base {
            rows.push(sparse_row(&base, action, s));
        }
        for origin in &origins {
            rows.push(sparse_row(&base, action, *origin));
        }
        matrices.push(rows);
    }
    let mut initial = vec![ratio(0, 1); n];
    initial[0] = ratio(1, 1);
    FiniteLmp::from_sparse(states, base.actions().to_vec(), matrices, initial).unwrap()
}

fn sparse_row(
    lmp: &FiniteLmp<Rational>,
    action: &str,
    s: usize,
) -> Vec<(usize, Rational)> {
    let states = lmp.states();
    (0..lmp.state_count())
        .filter_map(|t| {
            let v = lmp.rate(action, &states[s], &states[t]).unwrap();
            if crate::num::Scalar::is_zero(&v) {
                None
            } else {
                Some((t, v))
            }
        })
        .collect()
}

/// Random subdistribution over `n` states with denominator 24.
pub fn random_subdist(rng: &mut ChaCha8Rng, n: usize) -> SubDist<Rational> {
    let den = 24i64;
    let mut remaining = rng.gen_range(0..=den);
    let mut mass = vec![ratio(0, 1); n];
    while remaining > 0 {
        let share = rng.gen_range(1..=remaining);
        let state = rng.gen_range(0..n);
        mass[state] += ratio(share, den);
        remaining -= share;
        if rng.gen_bool(0.3) {
            break;
        }
    }
    SubDist::new(mass).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let a = random_lmp(7, 5, 2);
        let b = random_lmp(7, 5, 2);
        for action in a.actions() {
            for s in a.states() {
                for t in a.states() {
                    assert_eq!(a.rate(action, s, t).unwrap(), b.rate(action, s, t).unwrap());
                }
            }
        }
    }

    #[test]
    fn twins_share_rows_with_their_origins() {
        let lmp = random_lmp_with_twins(3, 4, 2, 2);
        assert_eq!(lmp.state_count(), 6);
    }
}
