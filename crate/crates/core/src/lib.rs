//! Simulation of a Majorana-defect exchange on a five-qubit matching-code
//! patch.
//!
//! Layers, bottom up: [`pauli`] and [`statevec`] (dense simulation and exact
//! projectors), [`circuit`] (IR and exact outcome distributions),
//! [`parity`] (ancilla parity checks), [`lattice`] (the code, the exchange
//! schedule and its truncation), [`exchange`] (the experiment and its
//! statistics), [`device`] (compilation onto constrained hardware) and
//! [`noise`] (trajectory noise and the shot executor).

pub mod circuit;
pub mod device;
pub mod error;
pub mod exchange;
pub mod lattice;
pub mod noise;
pub mod parity;
pub mod pauli;
pub mod statevec;

pub use circuit::{Circuit, Op};
pub use device::{assign_qubits, compile, DeviceModel, QubitAssignment, Role};
pub use error::{Error, Result};
pub use exchange::{
    correlation, ideal_circuit, postselect, reconstruct, run_shots, tomography_circuits, ExperimentCircuit,
    ExperimentDef, Readout, Setting, ShotTable, TomographyResult,
};
pub use lattice::{build_lattice, exchange_schedule, support, truncate, Lattice, StabilizerSet};
pub use noise::NoiseConfig;
pub use parity::{parity_circuit, ParityBasis, ParityMeasurement};
pub use pauli::{Pauli, PauliOperator};
pub use statevec::{Gate, GateKind, StateVector};
