//! Finite models for three continuous-state kernel families.
//!
//! Each constructor discretizes a continuous-state process into a
//! [`FiniteLmp`]: the unit-interval kernel and the triadic-set family are
//! discretized exactly in rational arithmetic, the heated-rooms family
//! numerically over a temperature grid.

mod cantor;
mod ex1;
mod heater;

pub use cantor::{cantor_uniform_en, cantor_uniform_interval, make_cantor};
pub use ex1::make_ex1;
pub use heater::{make_heater, HeaterParams};

/// Symbolic description of a kernel family, used by the CLI generator.
#[derive(Debug, Clone)]
pub enum KernelSpec {
    /// Unit-interval kernel with two atoms; `cells` grid cells on (0, 1).
    UnitInterval { cells: usize },
    /// Triadic middle-thirds family at `depth`, actions `0..=max_action`.
    Cantor { depth: usize, max_action: usize },
    /// Heated rooms over a temperature grid.
    Heater(HeaterParams),
}
