//! Built-in fixture suite over the example models.

use anyhow::Result;
use num_rational::BigRational;

use lmp::compose::{check_composition_bound, compose, DEFAULT_STATE_CAP};
use lmp::equivalence::{
    check_state_implies_dist, decide_dbisim, state_bisim_partition, DistanceParams, SpanBasis,
};
use lmp::kernels::{cantor_uniform_en, cantor_uniform_interval, make_cantor, make_ex1};
use lmp::logic::{distinguishing_from_basis, eval_formula, parse_formula};
use lmp::model::Word;
use lmp::num::parse_rational;
use lmp::semantics::{run_word, trace_mass};
use lmp::{fixtures, kernels};

fn r(s: &str) -> BigRational {
    parse_rational(s).expect("literal")
}

fn word(lmp_action: &str, len: usize) -> Word {
    std::iter::repeat(lmp_action).take(len).collect()
}

pub fn run() -> Result<i32> {
    let mut failures = 0usize;
    let mut check = |name: &str, outcome: Result<bool>| {
        let ok = matches!(outcome, Ok(true));
        println!("{:<44} {}", name, if ok { "pass" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    check("fig1: roots are trace equivalent", (|| {
        let lmp = fixtures::fig1();
        Ok(decide_dbisim(&lmp, &lmp.dirac("s0")?, &lmp.dirac("t0")?)?)
    })());

    check("fig1: refinement separates the roots", (|| {
        let lmp = fixtures::fig1();
        let partition = state_bisim_partition(&lmp);
        Ok(!partition.same_block(lmp.state_id("s0")?, lmp.state_id("t0")?))
    })());

    check("fig1: state bisimilarity implies trace", (|| {
        let lmp = fixtures::fig1();
        Ok(!check_state_implies_dist(&lmp)?.is_empty())
    })());

    check("fig1: three-step threshold formula", (|| {
        let lmp = fixtures::fig1();
        let mu = lmp.dirac("s0")?;
        let yes = parse_formula("<a>1 <a>1 <a>1/2 T")?;
        let no = parse_formula("<a>1 <a>1 <a>0.6 T")?;
        Ok(eval_formula(&lmp, &mu, &yes)? && !eval_formula(&lmp, &mu, &no)?)
    })());

    check("half-loop: witness and formula", (|| {
        let lmp = fixtures::half_loop();
        let basis = SpanBasis::new(&lmp);
        let s = lmp.dirac("s")?;
        let t = lmp.dirac("t")?;
        let witness = basis.witness(&s, &t)?.expect("inequivalent");
        let formula = distinguishing_from_basis(&basis, &s, &t)?.expect("inequivalent");
        Ok(witness.word.to_string() == "a"
            && formula.to_string() == "<a>3/4 T"
            && eval_formula(&lmp, &s, &formula)?
            && !eval_formula(&lmp, &t, &formula)?)
    })());

    check("unit interval: exact two-step masses", (|| {
        let lmp = make_ex1(8)?;
        let from0 = run_word(&lmp, &lmp.dirac("0")?, &word("a", 2))?;
        let from1 = run_word(&lmp, &lmp.dirac("1")?, &word("a", 2))?;
        Ok(*from0.get(0) == r("1/8") && *from1.get(0) == r("7/48"))
    })());

    check("unit interval: distance witness `aa`", (|| {
        let lmp = make_ex1(64)?;
        let bounds = lmp::equivalence::distance(
            &lmp,
            &lmp.dirac("0")?,
            &lmp.dirac("1")?,
            &DistanceParams::with_horizon(r("1"), 2),
        )
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
        Ok(bounds.lower == r("1/24") && bounds.witness.to_string() == "aa")
    })());

    check("triadic family: uniform pairs equivalent", (|| {
        let lmp = make_cantor(4, 2)?;
        for level in 1..=2 {
            let a = cantor_uniform_interval(4, level)?;
            let b = cantor_uniform_en(4, level)?;
            if !decide_dbisim(&lmp, &a, &b)? {
                return Ok(false);
            }
        }
        Ok(true)
    })());

    check("composition: trace masses factorize", (|| {
        let m1 = fixtures::fig1_s_side();
        let m2 = fixtures::half_loop();
        let prod = compose(&m1, &m2, DEFAULT_STATE_CAP)?;
        for len in 0..5 {
            let w = word("a", len);
            let lhs = trace_mass(&prod, prod.initial(), &w)?;
            let rhs = trace_mass(&m1, m1.initial(), &w)? * trace_mass(&m2, m2.initial(), &w)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    })());

    check("composition: identical pairs stay at zero", (|| {
        let m1 = fixtures::fig1_s_side();
        let m2 = fixtures::half_loop();
        let report =
            check_composition_bound(&m1, &m1, &m2, &m2, r("1"), 6, DEFAULT_STATE_CAP)
                .map_err(|e| anyhow::anyhow!(e.to_string()))?;
        Ok(report.holds && report.delta.upper == r("0"))
    })());

    check("heater: rows are subprobabilities", (|| {
        let lmp = kernels::make_heater(&kernels::HeaterParams::single_room())?;
        let ok = lmp.states().iter().enumerate().all(|(s, name)| {
            lmp.actions().iter().all(|a| {
                let total: f64 = lmp
                    .states()
                    .iter()
                    .map(|t| lmp.rate(a, name, t).unwrap())
                    .sum();
                let _ = s;
                total <= 1.0 + 1e-9
            })
        });
        Ok(ok)
    })());

    check("logic: eps under a diamond is rejected", (|| {
        Ok(parse_formula("<a>1/2 (eps>=1)").is_err())
    })());

    println!(
        "{}",
        if failures == 0 {
            "selftest: all checks passed".to_string()
        } else {
            format!("selftest: {failures} check(s) FAILED")
        }
    );
    Ok(if failures == 0 { 0 } else { 1 })
}
