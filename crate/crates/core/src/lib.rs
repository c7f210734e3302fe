//! Dense simulation of a one-sided-error quantum proof verifier built from
//! Choi-state post-selection, Bell-subspace pinching, the SWAP test and a
//! rewinding step.
//!
//! Layers, bottom up:
//!
//! * [`linalg`]: dense complex matrices, Kronecker products, spectra, norms.
//! * [`kernel`]: named registers, states, gates, measurements, pair
//!   symmetrization and seeded random streams.
//! * [`metrics`]: trace distance, fidelity and signed inequality margins.
//! * [`channels`]: Choi states and the pinching map.
//! * [`protocol`]: toy verifiers, provers, SWAP test, post-selection,
//!   rewinding and the full verifier.
//! * [`harness`]: JSON-configured experiments and reports.
//!
//! Qubit ordering is fixed once: registers are laid out left to right and the
//! leftmost qubit is the most significant bit of a basis index.
//!
//! Each capability has a runnable program under `examples/`:
//! `tensor_basics`, `bell_and_gates`, `choi_and_pinch`, `swap_test`,
//! `post_selection`, `rewinding`, `completeness`, `soundness`,
//! `inequalities` and `experiment_runner`.

pub mod channels;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod linalg;
pub mod metrics;
pub mod protocol;
pub mod random;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
