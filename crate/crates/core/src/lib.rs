//! Spectral adversary lower bounds for Boolean functions, checked against
//! exact continuous-time evolution in the Hamiltonian oracle model.
//!
//! The crate is `no_std` (it needs `alloc`). Enable the `parallel` feature to
//! run the per-index eigensolves and per-input evolutions on a rayon pool.
//!
//! Module map:
//! - [`boolfn`]: truth tables and the named test families.
//! - [`adversary`]: adversary matrices, their spectral data, the bound ratio
//!   and a heuristic weight search.
//! - [`oracle`]: block Hamiltonian oracles, driver schedules and the
//!   query-program compilers.
//! - [`evolve`]: exact piecewise-constant Schrödinger evolution and the
//!   progress-measure checks built on it.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod adversary;
pub mod boolfn;
mod error;
pub mod evolve;
pub mod linalg;
pub mod oracle;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Dense real matrix, used for adversary weights.
pub type RealMatrix = nalgebra::DMatrix<f64>;
/// Dense complex matrix, used for operators on the algorithm state space.
pub type ComplexMatrix = nalgebra::DMatrix<C64>;
/// Algorithm state vector.
pub type StateVector = nalgebra::DVector<C64>;
