//! Discretization properties beyond the per-module unit tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lmp::equivalence::{distance, DistanceParams};
use lmp::kernels::{cantor_uniform_en, make_cantor, make_heater, HeaterParams};
use lmp::num::Rational;
use lmp::semantics::lift_step;

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// The distance from the leftmost point mass to the uniform distribution
/// on E_n shrinks as n grows; continuity illustration at a small depth.
#[test]
fn triadic_distance_to_the_point_mass_is_nonincreasing() {
    let depth = 4;
    let lmp = make_cantor(depth, 2).unwrap();
    let origin = lmp.dirac(&"0".repeat(depth)).unwrap();
    let mut previous: Option<Rational> = None;
    for level in 1..depth {
        let target = cantor_uniform_en(depth, level).unwrap();
        let bounds = distance(
            &lmp,
            &origin,
            &target,
            &DistanceParams::with_horizon(ratio(1, 1), 4),
        )
        .unwrap();
        if let Some(prev) = previous {
            assert!(
                bounds.lower <= prev,
                "level {level}: {} > {prev}",
                bounds.lower
            );
        }
        previous = Some(bounds.lower);
    }
}

/// Monte Carlo oracle for the heater kernel: simulate the difference
/// equation directly and compare one-step means against the model's
/// cell-weighted means, heater on versus off.
#[test]
fn heater_one_step_means_match_simulation() {
    let params = HeaterParams::single_room();
    let lmp = make_heater(&params).unwrap();
    let width = (params.temp_max - params.temp_min) / params.temp_cells as f64;
    let start_cell = params.temp_cells / 2;
    let start_temp = params.temp_min + (start_cell as f64 + 0.5) * width;

    let model_mean = |mode_bit: char| -> f64 {
        let name = format!("h{mode_bit}t{start_cell}");
        let mu = lmp.dirac(&name).unwrap();
        let stepped = lift_step(&lmp, &mu, "none").unwrap();
        let mut weighted = 0.0;
        let mut total = 0.0;
        for (s, mass) in stepped.iter().enumerate() {
            let cell: usize = lmp.states()[s].split('t').nth(1).unwrap().parse().unwrap();
            weighted += mass * (params.temp_min + (cell as f64 + 0.5) * width);
            total += mass;
        }
        weighted / total
    };

    let simulated_mean = |heater_on: bool, seed: u64| -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = 100_000;
        let mut acc = 0.0;
        let mut kept = 0usize;
        for _ in 0..samples {
            // Standard normal via Box-Muller.
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            let z = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
            let next = start_temp
                + params.transfer_out[0] * (params.ambient - start_temp)
                + if heater_on { params.heater_gain[0] } else { 0.0 }
                + params.noise_sd[0] * z;
            if next >= params.temp_min && next <= params.temp_max {
                acc += next;
                kept += 1;
            }
        }
        acc / kept as f64
    };

    let tolerance = 2.0 * width;
    let off_model = model_mean('0');
    let on_model = model_mean('1');
    let off_sim = simulated_mean(false, params.seed + 1);
    let on_sim = simulated_mean(true, params.seed + 2);
    assert!(
        (off_model - off_sim).abs() <= tolerance,
        "off: model {off_model} vs simulated {off_sim}"
    );
    assert!(
        (on_model - on_sim).abs() <= tolerance,
        "on: model {on_model} vs simulated {on_sim}"
    );
    assert!(
        ((on_model - off_model) - params.heater_gain[0]).abs() <= tolerance,
        "gain shift: {} vs {}",
        on_model - off_model,
        params.heater_gain[0]
    );
}
