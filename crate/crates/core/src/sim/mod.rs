//! Dense statevector simulator for the brush gate set.
//!
//! Conventions:
//! - qubit 0 is the least-significant bit of the basis index;
//! - `Rα(λ) = exp(−i λ Pα / 2)` and `Rαα(λ) = exp(−i λ Pα⊗Pα / 2)`, so `Rxx(−Δt)`
//!   equals `exp(+i Δt X⊗X / 2)`;
//! - a negative control conditions on `|0⟩`.
//!
//! Only expectation values leave the simulator, so global phase is unobservable.

mod gate;
mod measure;
mod noise;
mod state;

use thiserror::Error;

pub use gate::{Circuit, Control, Gate, GateKind, Polarity};
pub use measure::PauliVector;
pub(crate) use measure::sample_components;
pub use noise::{derive_seed, NoiseSpec};
pub use state::StateVector;

use crate::scalar::Real;

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("qubit count {0} outside 1..={MAX_QUBITS}")]
    QubitCount(usize),
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit {0} used more than once by a gate")]
    OverlappingQubits(usize),
    #[error("{kind:?} expects {expected} target(s), got {got}")]
    Arity { kind: GateKind, expected: usize, got: usize },
    #[error("CNOT requires a control qubit")]
    MissingControl,
    #[error("{0:?} requires an angle")]
    MissingAngle(GateKind),
    #[error("{0:?} takes no angle")]
    UnexpectedAngle(GateKind),
    #[error("gate angle is not finite")]
    NonFiniteAngle,
    #[error("state has {state} qubits but circuit has {circuit}")]
    QubitCountMismatch { state: usize, circuit: usize },
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("state norm {0} is not 1")]
    NotNormalized(f64),
    #[error("{0}")]
    Argument(String),
}

pub fn apply_gate<T: Real>(mut state: StateVector<T>, gate: &Gate<T>) -> Result<StateVector<T>, SimError> {
    state.apply(gate)?;
    Ok(state)
}

/// Runs `circuit` gate by gate; with `noise`, injects seeded Pauli trajectory errors.
pub fn run_circuit<T: Real>(
    mut state: StateVector<T>,
    circuit: &Circuit<T>,
    noise: Option<&NoiseSpec>,
) -> Result<StateVector<T>, SimError> {
    state.run(circuit, noise)?;
    Ok(state)
}

pub fn bloch_vector<T: Real>(state: &StateVector<T>, qubit: usize) -> Result<PauliVector<T>, SimError> {
    state.bloch_vector(qubit)
}

pub fn sampled_bloch_vector<T: Real>(
    state: &StateVector<T>,
    qubit: usize,
    shots: u64,
    seed: u64,
) -> Result<PauliVector<T>, SimError> {
    state.sampled_bloch_vector(qubit, shots, seed)
}

pub fn magnetization<T: Real>(state: &StateVector<T>) -> T {
    state.magnetization()
}
