//! Float-mode discretization of the heated-rooms process.
//!
//! Each room has a heater that is on or off and a temperature. One step
//! first toggles the heaters named by the action, then moves every
//! temperature by the linear exchange dynamics plus independent Gaussian
//! noise:
//!
//! ```text
//! x_i' = x_i + b_i (ambient - x_i) + sum_{j != i} a_ij (x_j - x_i)
//!        + gain_i [heater i on] + noise_i
//! ```
//!
//! States are heater-configuration times one grid cell per room;
//! temperatures are represented by cell midpoints. Transition masses
//! integrate the Gaussian over each target cell via normal CDF
//! differences, and mass falling outside the grid is dropped, so rows are
//! genuine subprobabilities. The construction is deterministic; the seed
//! is carried for simulation-based validation only and never used here.

use statrs::function::erf::erf;

use crate::error::{LmpError, Result};
use crate::model::FiniteLmp;

/// Parameters of the heated-rooms family.
#[derive(Debug, Clone)]
pub struct HeaterParams {
    pub n_rooms: usize,
    /// Outside temperature (degrees C).
    pub ambient: f64,
    /// Per-room outward transfer rates `b_i >= 0`.
    pub transfer_out: Vec<f64>,
    /// Cross-room transfer rates `a_ij >= 0` with zero diagonal.
    pub transfer_cross: Vec<Vec<f64>>,
    /// Per-room heater gains.
    pub heater_gain: Vec<f64>,
    /// Per-room noise standard deviations, `>= 0`.
    pub noise_sd: Vec<f64>,
    /// Temperature grid: lower edge, upper edge, cell count (>= 2).
    pub temp_min: f64,
    pub temp_max: f64,
    pub temp_cells: usize,
    /// Seed for the simulation oracle; model construction ignores it.
    pub seed: u64,
    /// Cap on the generated state count.
    pub state_cap: usize,
}

impl HeaterParams {
    /// Single-room defaults used by the CLI generator.
    pub fn single_room() -> Self {
        HeaterParams {
            n_rooms: 1,
            ambient: 10.0,
            transfer_out: vec![0.3],
            transfer_cross: vec![vec![0.0]],
            heater_gain: vec![5.0],
            noise_sd: vec![1.5],
            temp_min: 0.0,
            temp_max: 30.0,
            temp_cells: 15,
            seed: 0,
            state_cap: crate::compose::DEFAULT_STATE_CAP,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n_rooms;
        if n == 0 {
            return Err(LmpError::Invariant("need at least one room".into()));
        }
        if self.transfer_out.len() != n
            || self.transfer_cross.len() != n
            || self.heater_gain.len() != n
            || self.noise_sd.len() != n
        {
            return Err(LmpError::DimensionMismatch(format!(
                "parameter vectors must have length {n}"
            )));
        }
        if self.transfer_out.iter().any(|&b| b < 0.0) {
            return Err(LmpError::Invariant("transfer rates must be >= 0".into()));
        }
        for (i, row) in self.transfer_cross.iter().enumerate() {
            if row.len() != n {
                return Err(LmpError::DimensionMismatch(format!(
                    "cross-transfer row {i} must have length {n}"
                )));
            }
            if row.iter().any(|&a| a < 0.0) {
                return Err(LmpError::Invariant("transfer rates must be >= 0".into()));
            }
            if row[i] != 0.0 {
                return Err(LmpError::Invariant(format!(
                    "cross-transfer diagonal entry {i} must be zero"
                )));
            }
        }
        if self.noise_sd.iter().any(|&s| s < 0.0) {
            return Err(LmpError::Invariant("noise sd must be >= 0".into()));
        }
        if self.temp_cells < 2 {
            return Err(LmpError::InvalidGrid("need at least 2 grid cells".into()));
        }
        if !(self.temp_max > self.temp_min) {
            return Err(LmpError::InvalidGrid(
                "temp_max must exceed temp_min".into(),
            ));
        }
        Ok(())
    }
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

/// Entries below this are dropped when assembling rows; the lost mass is
/// negligible against the grid truncation already inherent in the model.
const MASS_FLOOR: f64 = 1e-12;

/// Build the finite heater model.
///
/// Actions toggle heater subsets: `none`, and `r1`, `r1r3`, ... for the
/// room sets. With more than three rooms the alphabet is truncated to the
/// empty set plus singletons. The initial distribution is the point mass
/// at all-heaters-off with every room in the middle grid cell.
pub fn make_heater(params: &HeaterParams) -> Result<FiniteLmp<f64>> {
    params.validate()?;
    let n = params.n_rooms;
    let cells = params.temp_cells;
    let n_modes = 1usize << n;
    let cells_pow = (0..n).try_fold(1usize, |acc, _| {
        acc.checked_mul(cells).filter(|&v| v <= params.state_cap)
    });
    let n_states = cells_pow
        .and_then(|c| c.checked_mul(n_modes))
        .filter(|&v| v <= params.state_cap)
        .ok_or_else(|| {
            LmpError::StateCapExceeded(format!(
                "{n_modes} modes x {cells}^{n} cells exceed the cap {}",
                params.state_cap
            ))
        })?;

    let width = (params.temp_max - params.temp_min) / cells as f64;
    let midpoint = |cell: usize| params.temp_min + (cell as f64 + 0.5) * width;

    // Toggle masks: all subsets up to three rooms, else empty + singletons.
    let masks: Vec<usize> = if n <= 3 {
        (0..n_modes).collect()
    } else {
        std::iter::once(0).chain((0..n).map(|i| 1 << i)).collect()
    };
    let actions: Vec<String> = masks.iter().map(|&m| mask_label(m, n)).collect();

    let cell_tuples: Vec<Vec<usize>> = enumerate_tuples(cells, n);
    let state_of = |mode: usize, tuple_index: usize| mode * cell_tuples.len() + tuple_index;
    let states: Vec<String> = (0..n_modes)
        .flat_map(|mode| {
            cell_tuples.iter().map(move |tuple| {
                let bits: String = (0..n)
                    .map(|i| if mode >> i & 1 == 1 { '1' } else { '0' })
                    .collect();
                let cells: Vec<String> = tuple.iter().map(|c| c.to_string()).collect();
                format!("h{bits}t{}", cells.join("_"))
            })
        })
        .collect();

    let mut matrices = Vec::with_capacity(masks.len());
    for &mask in &masks {
        let mut rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n_states);
        for mode in 0..n_modes {
            let next_mode = mode ^ mask;
            for tuple in &cell_tuples {
                let temps: Vec<f64> = tuple.iter().map(|&c| midpoint(c)).collect();
                let means: Vec<f64> = (0..n)
                    .map(|i| {
                        let exchange: f64 = (0..n)
                            .filter(|&j| j != i)
                            .map(|j| params.transfer_cross[i][j] * (temps[j] - temps[i]))
                            .sum();
                        temps[i]
                            + params.transfer_out[i] * (params.ambient - temps[i])
                            + exchange
                            + if next_mode >> i & 1 == 1 {
                                params.heater_gain[i]
                            } else {
                                0.0
                            }
                    })
                    .collect();
                // Per-room mass over target cells; outside mass is lost.
                let room_masses: Vec<Vec<(usize, f64)>> = (0..n)
                    .map(|i| room_cell_masses(means[i], params.noise_sd[i], params, width))
                    .collect();
                let mut row: Vec<(usize, f64)> = Vec::new();
                let mut stack: Vec<(usize, usize, f64)> = vec![(0, 0, 1.0)];
                // Depth-first product over rooms.
                while let Some((room, tuple_acc, mass)) = stack.pop() {
                    if room == n {
                        row.push((state_of(next_mode, tuple_acc), mass));
                        continue;
                    }
                    for (cell, share) in &room_masses[room] {
                        let combined = mass * share;
                        if combined >= MASS_FLOOR {
                            stack.push((room + 1, tuple_acc * cells + cell, combined));
                        }
                    }
                }
                rows.push(row);
            }
        }
        matrices.push(rows);
    }

    let mut initial = vec![0.0; n_states];
    let middle: usize = enumerate_tuples(cells, n)
        .iter()
        .position(|t| t.iter().all(|&c| c == cells / 2))
        .expect("middle tuple exists");
    initial[middle] = 1.0;
    FiniteLmp::from_sparse(states, actions, matrices, initial)
}

fn mask_label(mask: usize, n: usize) -> String {
    if mask == 0 {
        return "none".to_string();
    }
    (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| format!("r{}", i + 1))
        .collect()
}

fn enumerate_tuples(cells: usize, rooms: usize) -> Vec<Vec<usize>> {
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..rooms {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..cells).map(move |c| {
                    let mut next = t.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    tuples
}

fn room_cell_masses(
    mean: f64,
    sd: f64,
    params: &HeaterParams,
    width: f64,
) -> Vec<(usize, f64)> {
    let cells = params.temp_cells;
    if sd == 0.0 {
        // Degenerate kernel: all mass lands in the cell containing the
        // mean, or is lost off-grid.
        if mean < params.temp_min || mean > params.temp_max {
            return Vec::new();
        }
        let cell = ((mean - params.temp_min) / width).floor() as usize;
        return vec![(cell.min(cells - 1), 1.0)];
    }
    (0..cells)
        .filter_map(|cell| {
            let lo = params.temp_min + cell as f64 * width;
            let hi = lo + width;
            let mass = normal_cdf((hi - mean) / sd) - normal_cdf((lo - mean) / sd);
            (mass >= MASS_FLOOR).then_some((cell, mass))
        })
        .collect()
}
