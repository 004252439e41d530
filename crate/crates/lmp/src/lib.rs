//! Finite labelled Markov processes with subdistribution semantics.
//!
//! The crate models finite-state LMPs — per-action subprobability matrices
//! plus an initial distribution — and provides:
//!
//! - exact decision of subdistribution bisimilarity (trace equivalence of
//!   subdistributions) over rational arithmetic;
//! - the discounted trace pseudometric with certified lower/upper bounds,
//!   approximate bisimilarity verdicts, and the equivalence metric between
//!   two models;
//! - state-bisimulation partition refinement;
//! - modal logics over subdistributions and states: parsing, model
//!   checking, conjunctive normal form, distinguishing-formula synthesis,
//!   and a quantitative logic matching the pseudometric;
//! - synchronous parallel composition with a quantitative distance bound;
//! - exact and quadrature-based discretizations of three continuous-state
//!   example families.
//!
//! Models are either exact (arbitrary-precision rationals) or float; the
//! decision procedures require exact mode.

pub mod compose;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod kernels;
pub mod logic;
pub mod model;
pub mod num;
pub mod random;
pub mod semantics;

pub use error::{LmpError, Result};
pub use io::{load_model, parse_model, save_model, Model};
pub use model::{FiniteLmp, SubDist, Word};
pub use num::{parse_rational, Rational, Scalar};
