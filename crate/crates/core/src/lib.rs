//! Quantum brushes for raster painting.
//!
//! Brush strokes are turned into small circuits (at most 12 qubits), simulated on a
//! [`backend::Backend`], and the measured single-qubit states are decoded back into
//! colours. The numerical layers are generic over [`scalar::Real`]; the aliases below fix
//! the scalar to `f64` (or `f32` with the `F32` suffix).

pub mod backend;
pub mod brushes;
pub mod canvas;
pub mod color;
pub mod pipeline;
pub mod scalar;
pub mod sim;

pub use backend::{Backend, BackendError, ExactBackend, NoisyBackend, SamplingBackend};
pub use pipeline::{render, render_effect, BrushKind, BrushRequest, BrushSpec};
pub use scalar::Real;

pub type StateVector = sim::StateVector<f64>;
pub type Gate = sim::Gate<f64>;
pub type Circuit = sim::Circuit<f64>;
pub type PauliVector = sim::PauliVector<f64>;
pub type HslColor = color::HslColor<f64>;
pub type RgbColor = color::RgbColor<f64>;
pub type BlochAngles = color::BlochAngles<f64>;

pub type StateVectorF32 = sim::StateVector<f32>;
pub type GateF32 = sim::Gate<f32>;
pub type CircuitF32 = sim::Circuit<f32>;
pub type PauliVectorF32 = sim::PauliVector<f32>;
pub type HslColorF32 = color::HslColor<f32>;
pub type RgbColorF32 = color::RgbColor<f32>;
pub type BlochAnglesF32 = color::BlochAngles<f32>;
