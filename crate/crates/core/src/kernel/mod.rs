//! States, registers, gates and measurements.

pub mod gates;
pub mod layout;
pub mod measure;
pub mod rng;
pub mod state;
pub mod symmetrize;

pub use gates::{make_gate, Gate};
pub use layout::{Register, RegisterLayout};
pub use measure::{measure, MeasurementRecord, PostState, ProjectiveMeasurement, Sampling};
pub use rng::TrialRng;
pub use state::{DensityOperator, StateVector};
pub use symmetrize::{symmetrize_pairs, PairMode, Symmetrized};
