//! Numerical study of the two-qubit state left behind by the quantum deletion
//! machine.
//!
//! The crate builds the machine's output ([`states`]), runs the standard
//! inseparability and Bell-CHSH diagnostics on it ([`criteria`]) and checks
//! the teleportation fidelity formula against a direct simulation of the
//! teleportation protocol ([`teleport`]). All linear algebra is done by the
//! small dense kernel in [`linalg`].
//!
//! Basis ordering is `|00>, |01>, |10>, |11>` throughout, first factor being
//! qubit `a`.

pub mod audit;
pub mod criteria;
mod error;
pub mod linalg;
pub mod states;
pub mod sweep;
pub mod teleport;

#[cfg(feature = "cli")]
pub mod cli;

pub use criteria::{analyze, CriteriaReport};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, RealMatrix3};
pub use states::{DeletionParams, DensityMatrix, PureState};
pub use sweep::{run_sweep, SweepConfig, SweepRow};
pub use teleport::{FidelityEstimate, TeleportChannel};

/// Default blank-state amplitude, `m1 = m2 = 1/sqrt(2)`.
pub const DEFAULT_M1: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Best average fidelity reachable by measure-and-prepare strategies.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;
