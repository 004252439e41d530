//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p lmp-cli --test acceptance -- --nocapture` to see
//! the per-criterion lines; the harness itself reports ok/FAILED per test.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lmp::compose::{check_composition_bound, compose, DEFAULT_STATE_CAP};
use lmp::equivalence::{
    check_state_implies_dist, distance, state_bisim_partition, DistanceParams, SpanBasis,
};
use lmp::fixtures;
use lmp::kernels::{cantor_uniform_en, cantor_uniform_interval, make_cantor, make_ex1};
use lmp::logic::{
    distinguishing_from_basis, eval_formula, logical_distance_lower, parse_formula, Formula,
    QFormula,
};
use lmp::model::{SubDist, Word};
use lmp::num::Rational;
use lmp::random::{random_lmp, random_lmp_with_twins, random_subdist};
use lmp::semantics::{lift_step, run_word, trace_mass};
use lmp::FiniteLmp;

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_lmp")
}

fn fig1_path() -> String {
    format!("{}/tests/fixtures/fig1.json", env!("CARGO_MANIFEST_DIR"))
}

/// Criterion 1: the figure's roots are equivalent through the CLI, the
/// refinement separates them, and both runs finish within a second.
#[test]
fn criterion_01_figure_equivalence_and_refinement() {
    let started = Instant::now();
    let check = Command::new(bin())
        .args(["check-equiv", &fig1_path(), "--mu", "dirac:s0", "--nu", "dirac:t0"])
        .output()
        .unwrap();
    assert_eq!(check.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&check.stdout).unwrap();
    assert_eq!(doc["equivalent"], serde_json::json!(true));

    let refine = Command::new(bin())
        .args(["refine", &fig1_path()])
        .output()
        .unwrap();
    assert_eq!(refine.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&refine.stdout).unwrap();
    let blocks = doc["blocks"].as_array().unwrap();
    let block_of = |name: &str| {
        blocks
            .iter()
            .position(|b| b.as_array().unwrap().iter().any(|s| s == name))
            .unwrap()
    };
    assert_ne!(block_of("s0"), block_of("t0"));

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 1 (figure equivalence + refinement, < 1 s): pass");
}

/// Criterion 2: exact two-step masses 1/8 and 7/48 on every grid size,
/// and the CLI reports inequivalence with witness `aa` and a separating
/// formula.
#[test]
fn criterion_02_unit_interval_counterexample() {
    let aa: Word = ["a", "a"].into_iter().collect();
    for cells in [2usize, 8, 64] {
        let lmp = make_ex1(cells).unwrap();
        let from0 = run_word(&lmp, &lmp.dirac("0").unwrap(), &aa).unwrap();
        let from1 = run_word(&lmp, &lmp.dirac("1").unwrap(), &aa).unwrap();
        assert_eq!(*from0.get(0), ratio(1, 8), "N = {cells}");
        assert_eq!(*from0.get(1), ratio(1, 8), "N = {cells}");
        assert_eq!(*from1.get(0), ratio(7, 48), "N = {cells}");
        assert_eq!(*from1.get(1), ratio(7, 48), "N = {cells}");
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex1_64.json");
    let gen = Command::new(bin())
        .args(["gen", "ex1", "--cells", "64", "-o", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(gen.status.code(), Some(0));
    let out = Command::new(bin())
        .args([
            "check-equiv",
            path.to_str().unwrap(),
            "--mu",
            "dirac:0",
            "--nu",
            "dirac:1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["witness"], serde_json::json!(["a", "a"]));

    // The emitted formula genuinely separates the two point masses.
    let formula = parse_formula(doc["distinguishing_formula"].as_str().unwrap()).unwrap();
    let lmp = make_ex1(64).unwrap();
    let at0 = eval_formula(&lmp, &lmp.dirac("0").unwrap(), &formula).unwrap();
    let at1 = eval_formula(&lmp, &lmp.dirac("1").unwrap(), &formula).unwrap();
    assert_ne!(at0, at1);
    println!("criterion 2 (unit-interval masses exact, witness aa): pass");
}

/// Exhaustive word scan: does any word of length <= max_len separate the
/// two subdistributions? Forward semantics only, independent of the span
/// machinery.
fn oracle_separated(
    lmp: &FiniteLmp<Rational>,
    mu: &SubDist<Rational>,
    nu: &SubDist<Rational>,
    max_len: usize,
) -> bool {
    let mut stack = vec![(mu.clone(), nu.clone(), 0usize)];
    while let Some((a, b, depth)) = stack.pop() {
        if a.total() != b.total() {
            return true;
        }
        if depth < max_len {
            for action in lmp.actions() {
                stack.push((
                    lift_step(lmp, &a, action).unwrap(),
                    lift_step(lmp, &b, action).unwrap(),
                    depth + 1,
                ));
            }
        }
    }
    false
}

/// Criterion 3: the span decision agrees with exhaustive enumeration up
/// to the dimension bound on 500 random models x 200 pairs, within 60 s.
#[test]
fn criterion_03_oracle_agreement() {
    let started = Instant::now();
    let mut decisions = 0usize;
    for seed in 0..500u64 {
        let n = 2 + (seed as usize % 5);
        let k = 1 + (seed as usize % 3);
        let lmp = random_lmp(seed, n, k);
        let basis = SpanBasis::new(&lmp);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
        for _ in 0..200 {
            let mu = random_subdist(&mut rng, n);
            let nu = random_subdist(&mut rng, n);
            let decided = basis.equivalent(&mu, &nu).unwrap();
            let oracle = !oracle_separated(&lmp, &mu, &nu, n);
            assert_eq!(decided, oracle, "seed {seed}");
            decisions += 1;
        }
    }
    let elapsed = started.elapsed();
    assert_eq!(decisions, 100_000);
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 3 (span vs exhaustive, 100k decisions in {elapsed:?}): pass");
}

/// Criterion 4: horizon-8 truncated distances satisfy the pseudometric
/// axioms and the discount/epsilon monotonicities exactly.
#[test]
fn criterion_04_metric_properties() {
    let horizon = 8usize;
    for seed in 0..200u64 {
        let n = 3 + (seed as usize % 3);
        let lmp = random_lmp(seed.wrapping_add(10_000), n, 1 + (seed as usize % 2));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu1 = random_subdist(&mut rng, n);
        let mu2 = random_subdist(&mut rng, n);
        let mu3 = random_subdist(&mut rng, n);
        let value = |a: &SubDist<Rational>, b: &SubDist<Rational>, c: Rational| {
            distance(&lmp, a, b, &DistanceParams::with_horizon(c, horizon))
                .unwrap()
                .lower
        };
        for c in [ratio(1, 1), ratio(1, 2)] {
            let d12 = value(&mu1, &mu2, c.clone());
            let d21 = value(&mu2, &mu1, c.clone());
            assert_eq!(d12, d21, "symmetry, seed {seed}");
            assert_eq!(value(&mu1, &mu1, c.clone()), ratio(0, 1), "identity, seed {seed}");
            let d13 = value(&mu1, &mu3, c.clone());
            let d23 = value(&mu2, &mu3, c.clone());
            assert!(d13 <= &d12 + &d23, "triangle, seed {seed}");
        }
        // Discount monotonicity, on both interval ends.
        let small = distance(&lmp, &mu1, &mu2, &DistanceParams::with_horizon(ratio(1, 2), horizon))
            .unwrap();
        let large = distance(&lmp, &mu1, &mu2, &DistanceParams::with_horizon(ratio(1, 1), horizon))
            .unwrap();
        assert!(small.lower <= large.lower, "seed {seed}");
        assert!(small.upper <= large.upper, "seed {seed}");
        // Epsilon monotonicity: Yes at the upper bound persists upward.
        let params = DistanceParams::with_horizon(ratio(1, 2), horizon);
        let eps = small.upper.clone();
        for bump in [ratio(0, 1), ratio(1, 8), ratio(1, 2)] {
            let verdict =
                lmp::equivalence::approx_bisim(&lmp, &mu1, &mu2, &(&eps + &bump), &params)
                    .unwrap();
            assert!(
                matches!(verdict, lmp::equivalence::ApproxVerdict::Yes),
                "seed {seed}"
            );
        }
    }
    println!("criterion 4 (pseudometric axioms + monotonicities, 200 models): pass");
}

/// Criterion 5: state bisimilarity implies trace equivalence of point
/// masses on the figure and 200 random models.
#[test]
fn criterion_05_state_implies_distribution() {
    check_state_implies_dist(&fixtures::fig1()).unwrap();
    for seed in 0..200u64 {
        let lmp = if seed % 2 == 0 {
            random_lmp(seed.wrapping_add(20_000), 3 + (seed as usize % 4), 1 + (seed as usize % 3))
        } else {
            random_lmp_with_twins(seed.wrapping_add(20_000), 3 + (seed as usize % 3), 2, 2)
        };
        check_state_implies_dist(&lmp).unwrap();
    }
    println!("criterion 5 (state bisimilarity implies trace, 200 models): pass");
}

/// Criterion 6: equivalence is preserved by every valid finite mix.
#[test]
fn criterion_06_linearity_of_equivalence() {
    let mut verified = 0usize;
    for seed in 0..200u64 {
        let lmp = random_lmp_with_twins(seed.wrapping_add(30_000), 4, 2, 2);
        let n = lmp.state_count();
        let basis = SpanBasis::new(&lmp);
        let partition = state_bisim_partition(&lmp);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        // Equivalent pairs: twin point masses plus a reflexive pair.
        let mut pairs: Vec<(SubDist<Rational>, SubDist<Rational>)> = Vec::new();
        for block in partition.blocks() {
            if block.len() >= 2 && pairs.len() < 3 {
                let a = lmp.dirac(&lmp.states()[block[0]]).unwrap();
                let b = lmp.dirac(&lmp.states()[block[1]]).unwrap();
                assert!(basis.equivalent(&a, &b).unwrap(), "twin pair, seed {seed}");
                pairs.push((a, b));
            }
        }
        let same = random_subdist(&mut rng, n);
        pairs.push((same.clone(), same));
        assert!(pairs.len() >= 2, "twins guarantee a nontrivial pair");

        // Random nonnegative coefficients small enough to stay a subdistribution.
        let k = pairs.len() as i64;
        let coeffs: Vec<Rational> = (0..pairs.len())
            .map(|_| ratio(rng.gen_range(0..=8), 8 * k))
            .collect();
        let left = SubDist::mix(
            n,
            &coeffs
                .iter()
                .cloned()
                .zip(pairs.iter().map(|(a, _)| a.clone()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let right = SubDist::mix(
            n,
            &coeffs
                .iter()
                .cloned()
                .zip(pairs.iter().map(|(_, b)| b.clone()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(basis.equivalent(&left, &right).unwrap(), "mix, seed {seed}");
        verified += 1;
    }
    assert_eq!(verified, 200);
    println!("criterion 6 (linearity of equivalence, 200 models): pass");
}

fn perturb(lmp: &FiniteLmp<Rational>) -> FiniteLmp<Rational> {
    let n = lmp.state_count();
    let states = lmp.states().to_vec();
    let mut matrices: Vec<Vec<Vec<Rational>>> = lmp
        .actions()
        .iter()
        .map(|a| {
            (0..n)
                .map(|s| {
                    (0..n)
                        .map(|t| lmp.rate(a, &states[s], &states[t]).unwrap())
                        .collect()
                })
                .collect()
        })
        .collect();
    // Shrink the first nonzero entry by one tenth (clamped at zero).
    'outer: for matrix in &mut matrices {
        for row in matrix.iter_mut() {
            for entry in row.iter_mut() {
                if *entry > ratio(0, 1) {
                    let reduced = &*entry - ratio(1, 10);
                    *entry = if reduced > ratio(0, 1) { reduced } else { ratio(0, 1) };
                    break 'outer;
                }
            }
        }
    }
    FiniteLmp::from_dense(
        states,
        lmp.actions().to_vec(),
        matrices,
        lmp.initial().as_slice().to_vec(),
    )
    .unwrap()
}

/// Criterion 7: product trace identity, the composition distance bound on
/// perturbed quadruples, and preservation of equivalence by composition.
#[test]
fn criterion_07_composition() {
    // Product trace identity on 100 random triples.
    for seed in 0..100u64 {
        let m1 = random_lmp(seed.wrapping_add(40_000), 2 + (seed as usize % 4), 2);
        let m2 = random_lmp(seed.wrapping_add(41_000), 2 + (seed as usize % 3), 2);
        let prod = compose(&m1, &m2, DEFAULT_STATE_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = rng.gen_range(0..=6);
        let word: Word = (0..len)
            .map(|_| m1.actions()[rng.gen_range(0..m1.actions().len())].clone())
            .collect();
        let lhs = trace_mass(&prod, prod.initial(), &word).unwrap();
        let rhs = trace_mass(&m1, m1.initial(), &word).unwrap()
            * trace_mass(&m2, m2.initial(), &word).unwrap();
        assert_eq!(lhs, rhs, "seed {seed}");
    }

    // Composition bound on 100 perturbed quadruples at three discounts.
    for seed in 0..100u64 {
        let m1 = random_lmp(seed.wrapping_add(42_000), 2 + (seed as usize % 3), 2);
        let m2 = random_lmp(seed.wrapping_add(43_000), 2 + (seed as usize % 3), 2);
        let m1p = perturb(&m1);
        let m2p = perturb(&m2);
        for c in [ratio(1, 1), ratio(9, 10), ratio(1, 2)] {
            let report =
                check_composition_bound(&m1, &m1p, &m2, &m2p, c.clone(), 8, DEFAULT_STATE_CAP)
                    .unwrap();
            assert!(report.holds, "seed {seed}, c = {c}");
        }
    }

    // Equivalent components compose to equivalent products, up to 400
    // product states.
    let left_half = fixtures::fig1_s_side();
    let right_half = fixtures::fig1_t_side();
    for (seed, shared_n) in [(1u64, 5usize), (2, 20), (3, 57)] {
        let shared = random_lmp(seed.wrapping_add(44_000), shared_n, 1);
        let p1 = compose(&left_half, &shared, DEFAULT_STATE_CAP).unwrap();
        let p2 = compose(&right_half, &shared, DEFAULT_STATE_CAP).unwrap();
        assert!(p1.state_count() <= 400 && p2.state_count() <= 400);
        let (union, left, right) = lmp::equivalence::disjoint_union(&p1, &p2).unwrap();
        assert!(
            lmp::equivalence::decide_dbisim(&union, &left, &right).unwrap(),
            "shared_n = {shared_n}"
        );
    }
    println!("criterion 7 (composition identities and bound): pass");
}

/// Criterion 8: the triadic uniform pairs are equivalent at depth 6 over
/// actions a0..a3, and the horizon-6 distance from the leftmost point
/// mass to U(E_n) is nonincreasing in n.
#[test]
fn criterion_08_triadic_family() {
    let depth = 6usize;
    let lmp = make_cantor(depth, 3).unwrap();
    let basis = SpanBasis::new(&lmp);
    for level in [1usize, 2, 3] {
        let interval = cantor_uniform_interval(depth, level).unwrap();
        let en = cantor_uniform_en(depth, level).unwrap();
        assert!(basis.equivalent(&interval, &en).unwrap(), "level {level}");
    }

    let origin = lmp.dirac(&"0".repeat(depth)).unwrap();
    let mut previous: Option<Rational> = None;
    for level in [1usize, 2, 3] {
        let target = cantor_uniform_en(depth, level).unwrap();
        let bounds = distance(
            &lmp,
            &origin,
            &target,
            &DistanceParams::with_horizon(ratio(1, 1), 6),
        )
        .unwrap();
        if let Some(prev) = &previous {
            assert!(bounds.lower <= *prev, "level {level}");
        }
        previous = Some(bounds.lower);
    }
    println!("criterion 8 (triadic equivalences + shrinking distance): pass");
}

/// All chains of depth <= `depth` with every position's threshold drawn
/// from the grid, plus the top-level mass tests.
fn enumerate_chain_formulas(actions: &[String], depth: usize) -> Vec<Formula> {
    let grid = [ratio(0, 1), ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(1, 1)];
    let mut layers: Vec<Vec<Formula>> = vec![vec![Formula::True]];
    for _ in 0..depth {
        let previous = layers.last().unwrap();
        let mut next = Vec::new();
        for inner in previous {
            for action in actions {
                for q in &grid {
                    next.push(Formula::Diamond {
                        action: action.clone(),
                        threshold: q.clone(),
                        inner: Box::new(inner.clone()),
                    });
                }
            }
        }
        layers.push(next);
    }
    let mut formulas: Vec<Formula> = grid.iter().map(|q| Formula::EpsAtLeast(q.clone())).collect();
    formulas.extend(layers.into_iter().skip(1).flatten());
    formulas
}

/// Criterion 9: equivalent pairs satisfy identical formulas over the
/// enumerated set; inequivalent pairs are separated by the synthesized
/// formula.
#[test]
fn criterion_09_logic_soundness_and_completeness() {
    for seed in 0..100u64 {
        let lmp = random_lmp_with_twins(seed.wrapping_add(50_000), 4, 2, 2);
        let basis = SpanBasis::new(&lmp);
        let partition = state_bisim_partition(&lmp);
        let formulas = enumerate_chain_formulas(lmp.actions(), 3);

        // Soundness over the enumerated set for pairs declared equivalent.
        let mut equivalent_pairs = 0usize;
        for block in partition.blocks() {
            if block.len() < 2 {
                continue;
            }
            let a = lmp.dirac(&lmp.states()[block[0]]).unwrap();
            let b = lmp.dirac(&lmp.states()[block[1]]).unwrap();
            assert!(basis.equivalent(&a, &b).unwrap());
            for phi in &formulas {
                assert_eq!(
                    eval_formula(&lmp, &a, phi).unwrap(),
                    eval_formula(&lmp, &b, phi).unwrap(),
                    "seed {seed}, formula {phi}"
                );
            }
            equivalent_pairs += 1;
        }
        assert!(equivalent_pairs >= 1, "twins provide an equivalent pair");

        // Completeness at the witness for random inequivalent pairs.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let mu = random_subdist(&mut rng, lmp.state_count());
            let nu = random_subdist(&mut rng, lmp.state_count());
            if basis.equivalent(&mu, &nu).unwrap() {
                continue;
            }
            let phi = distinguishing_from_basis(&basis, &mu, &nu)
                .unwrap()
                .expect("inequivalent pair");
            assert_ne!(
                eval_formula(&lmp, &mu, &phi).unwrap(),
                eval_formula(&lmp, &nu, &phi).unwrap(),
                "seed {seed}"
            );
        }
    }
    println!("criterion 9 (logical soundness + completeness, 100 models): pass");
}

/// Criterion 10: over all chain formulas of words up to length 8, the
/// logical distance equals the horizon-8 truncated trace distance.
#[test]
fn criterion_10_quantitative_logic_attains_the_metric() {
    for seed in 0..100u64 {
        let lmp = random_lmp(seed.wrapping_add(60_000), 3 + (seed as usize % 3), 2);
        let n = lmp.state_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = random_subdist(&mut rng, n);
        let nu = random_subdist(&mut rng, n);

        // All words of length <= 8 over the alphabet, as chain formulas.
        let mut words: Vec<Vec<String>> = vec![Vec::new()];
        let mut layer: Vec<Vec<String>> = vec![Vec::new()];
        for _ in 0..8 {
            layer = layer
                .iter()
                .flat_map(|w| {
                    lmp.actions().iter().map(move |a| {
                        let mut next = w.clone();
                        next.push(a.clone());
                        next
                    })
                })
                .collect();
            words.extend(layer.iter().cloned());
        }
        let chains: Vec<QFormula> = words.iter().map(|w| QFormula::chain(&Word(w.clone()))).collect();

        for c in [ratio(1, 1), ratio(1, 2)] {
            let logical = logical_distance_lower(&lmp, &mu, &nu, &c, &chains).unwrap();
            let bounds = distance(&lmp, &mu, &nu, &DistanceParams::with_horizon(c.clone(), 8))
                .unwrap();
            assert_eq!(logical, bounds.lower, "seed {seed}, c = {c}");
        }
    }
    println!("criterion 10 (chain logic attains the truncated metric): pass");
}
