//! Small finite models used by the test suites and the CLI self-test.

use crate::model::FiniteLmp;
use crate::num::{parse_rational, Rational};

fn r(s: &str) -> Rational {
    parse_rational(s).expect("fixture literal")
}

/// Eleven-state single-action model with two halves: an `s`-chain whose
/// branch point comes after one step, and a `t`-chain that branches
/// immediately. The point masses at `s0` and `t0` are trace equivalent,
/// while `s0` and `t0` are not state-bisimilar.
pub fn fig1() -> FiniteLmp<Rational> {
    let states: Vec<String> = ["s0", "s1", "s2", "s3", "t0", "t1", "t2", "t3", "t4", "t5", "t6"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let edges: &[(&str, &str, &str)] = &[
        ("s0", "s1", "1"),
        ("s1", "s2", "1/2"),
        ("s1", "s3", "1/2"),
        ("s2", "s2", "1"),
        ("t0", "t1", "1/2"),
        ("t0", "t2", "1/2"),
        ("t1", "t3", "1/3"),
        ("t1", "t4", "2/3"),
        ("t2", "t5", "1/3"),
        ("t2", "t6", "2/3"),
        ("t3", "t3", "1"),
        ("t6", "t6", "1"),
    ];
    let index = |name: &str| states.iter().position(|s| s == name).unwrap();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); states.len()];
    for (from, to, mass) in edges {
        rows[index(from)].push((index(to), r(mass)));
    }
    let mut initial = vec![r("0"); states.len()];
    initial[0] = r("1");
    FiniteLmp::from_sparse(states, vec!["a".into()], vec![rows], initial).unwrap()
}

/// Two states looping on one action: `s` with probability 1 and `t` with
/// probability 1/2. The point masses are not trace equivalent and give a
/// one-step mass gap of 1/2.
pub fn half_loop() -> FiniteLmp<Rational> {
    FiniteLmp::from_sparse(
        vec!["s".into(), "t".into()],
        vec!["a".into()],
        vec![vec![vec![(0, r("1"))], vec![(1, r("1/2"))]]],
        vec![r("1"), r("0")],
    )
    .unwrap()
}

/// The `s`-half of [`fig1`] as a standalone model started at `s0`.
pub fn fig1_s_side() -> FiniteLmp<Rational> {
    let states: Vec<String> = ["s0", "s1", "s2", "s3"].iter().map(|s| s.to_string()).collect();
    FiniteLmp::from_sparse(
        states,
        vec!["a".into()],
        vec![vec![
            vec![(1, r("1"))],
            vec![(2, r("1/2")), (3, r("1/2"))],
            vec![(2, r("1"))],
            vec![],
        ]],
        vec![r("1"), r("0"), r("0"), r("0")],
    )
    .unwrap()
}

/// The `t`-half of [`fig1`] as a standalone model started at `t0`.
pub fn fig1_t_side() -> FiniteLmp<Rational> {
    let states: Vec<String> = ["t0", "t1", "t2", "t3", "t4", "t5", "t6"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteLmp::from_sparse(
        states,
        vec!["a".into()],
        vec![vec![
            vec![(1, r("1/2")), (2, r("1/2"))],
            vec![(3, r("1/3")), (4, r("2/3"))],
            vec![(5, r("1/3")), (6, r("2/3"))],
            vec![(3, r("1"))],
            vec![],
            vec![],
            vec![(6, r("1"))],
        ]],
        vec![r("1"), r("0"), r("0"), r("0"), r("0"), r("0"), r("0")],
    )
    .unwrap()
}

/// One-state model looping with probability `p` on action `a`.
pub fn single_loop(p: &str) -> FiniteLmp<Rational> {
    FiniteLmp::from_sparse(
        vec!["s".into()],
        vec!["a".into()],
        vec![vec![vec![(0, r(p))]]],
        vec![r("1")],
    )
    .unwrap()
}
