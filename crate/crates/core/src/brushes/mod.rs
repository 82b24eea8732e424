//! The four brushes. Each builds a small circuit from canvas colours, runs it on a
//! [`Backend`](crate::backend::Backend), and turns tomography back into colours.

pub mod aquarela;
pub mod collage;
pub mod heisenbrush;
pub mod smudge;
mod update;

use thiserror::Error;

pub use aquarela::{aquarela_circuit, aquarela_colors, run_aquarela, AquarelaParams};
pub use collage::{
    cloning_constraint, map_singular_values, run_collage, solve_s1, svd_encode, uaqc_circuit, CollageParams,
    SingularTriple,
};
pub use heisenbrush::{
    heisen_colors, qubits_for_radius, run_heisenbrush, trotter_step_circuit, HeisenMode, HeisenParams,
};
pub use smudge::{run_smudge, smudge_circuit, smudge_colors, SmudgeControl, SmudgeParams};
pub use update::{BrushEffect, SegmentColorUpdate, UpdateMode};

use crate::backend::BackendError;
use crate::canvas::CanvasError;
use crate::sim::SimError;

/// A single out-of-range or malformed parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamViolation {
    pub field: String,
    pub message: String,
}

impl ParamViolation {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ParamViolation {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BrushError {
    #[error("invalid parameters: {}", list(.0))]
    InvalidParams(Vec<ParamViolation>),
    #[error("{brush} needs between 1 and {max} qubit-carrying inputs, got {got}")]
    InputCount { brush: &'static str, got: usize, max: usize },
    #[error("region has {pixels} pixels; at least 3 are required")]
    RegionTooSmall { pixels: usize },
    #[error("cloning parameters s0={s0}, s1={s1} violate the no-cloning bound")]
    CloningConstraint { s0: f64, s1: f64 },
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Canvas(#[from] CanvasError),
}

fn list(v: &[ParamViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub(crate) fn check_unit_interval<T: crate::scalar::Real>(
    out: &mut Vec<ParamViolation>,
    field: &str,
    value: T,
    hi: T,
) {
    if !(value.is_finite() && value >= T::zero() && value <= hi) {
        out.push(ParamViolation::new(field, format!("{value} outside [0, {hi}]")));
    }
}

pub(crate) fn check_color<T: crate::scalar::Real>(
    out: &mut Vec<ParamViolation>,
    field: &str,
    c: &crate::color::HslColor<T>,
) {
    check_unit_interval(out, &format!("{field}.h"), c.h, T::one());
    check_unit_interval(out, &format!("{field}.s"), c.s, T::one());
    check_unit_interval(out, &format!("{field}.l"), c.l, T::one());
}

pub(crate) fn finish(violations: Vec<ParamViolation>) -> Result<(), BrushError> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(BrushError::InvalidParams(violations))
    }
}
