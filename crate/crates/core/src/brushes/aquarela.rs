//! Aquarela: a brush ancilla steers each stroke segment toward the brush colour, and is
//! itself nudged toward `|0⟩` by every segment it visits.

use super::{check_color, check_unit_interval, finish, BrushEffect, BrushError, ParamViolation, SegmentColorUpdate};
use crate::backend::Backend;
use crate::canvas::{region_mean_hsl, segment, CanvasImage, Stroke};
use crate::color::{decode_bloch, encode_hl, BlochAngles, HslColor};
use crate::scalar::Real;
use crate::sim::{Circuit, Gate, MAX_QUBITS};

/// At most this many segments, leaving one qubit for the brush ancilla.
pub const MAX_SEGMENTS: usize = MAX_QUBITS - 1;

/// Fixed back-action rotation applied to the ancilla by each segment.
pub const BACK_ACTION_ANGLE: f64 = std::f64::consts::FRAC_PI_3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AquarelaParams<T> {
    pub brush_color: HslColor<T>,
    /// Steering strength in `[0, 1]`; zero disables the effect.
    pub gamma: T,
    pub n_segments: usize,
}

impl<T: Real> AquarelaParams<T> {
    pub fn validate(&self) -> Result<(), BrushError> {
        let mut v = Vec::new();
        check_color(&mut v, "brush_color", &self.brush_color);
        check_unit_interval(&mut v, "gamma", self.gamma, T::one());
        if !(1..=MAX_SEGMENTS).contains(&self.n_segments) {
            v.push(ParamViolation::new(
                "n_segments",
                format!("{} outside [1, {MAX_SEGMENTS}]", self.n_segments),
            ));
        }
        finish(v)
    }
}

/// Segment qubits are `0..N`, the brush ancilla is qubit `N`.
pub fn aquarela_circuit<T: Real>(
    segments: &[BlochAngles<T>],
    brush: &BlochAngles<T>,
    gamma: T,
) -> Result<Circuit<T>, BrushError> {
    let n = segments.len();
    if !(1..=MAX_SEGMENTS).contains(&n) {
        return Err(BrushError::InputCount {
            brush: "aquarela",
            got: n,
            max: MAX_SEGMENTS,
        });
    }
    let ancilla = n;
    let mut c = Circuit::new(n + 1)?;
    for (q, a) in segments.iter().enumerate() {
        c.push(Gate::ry(q, a.theta))?;
        c.push(Gate::rz(q, a.phi))?;
    }
    c.push(Gate::x(ancilla))?;
    let back_action = T::lit(BACK_ACTION_ANGLE);
    for (q, a) in segments.iter().enumerate() {
        c.push(Gate::rz(q, -gamma * a.phi).controlled_by(ancilla))?;
        c.push(Gate::ry(q, gamma * (brush.theta - a.theta)).controlled_by(ancilla))?;
        c.push(Gate::rz(q, gamma * brush.phi).controlled_by(ancilla))?;
        c.push(Gate::ry(ancilla, back_action).neg_controlled_by(q))?;
    }
    Ok(c)
}

/// New `(h, l)` of every segment given their mean colours.
pub fn aquarela_colors<T: Real>(
    segment_colors: &[HslColor<T>],
    params: &AquarelaParams<T>,
    backend: &dyn Backend<T>,
    seed: u64,
) -> Result<Vec<(T, T)>, BrushError> {
    let angles: Vec<BlochAngles<T>> = segment_colors.iter().map(encode_hl).collect();
    let circuit = aquarela_circuit(&angles, &encode_hl(&params.brush_color), params.gamma)?;
    let qubits: Vec<usize> = (0..segment_colors.len()).collect();
    let tomography = backend.tomography(&circuit, &qubits, seed)?;
    Ok(tomography
        .iter()
        .zip(segment_colors)
        .map(|(e, old)| decode_bloch(e, old.h))
        .collect())
}

/// Splits the stroke, recolours each segment and returns per-segment shift updates.
pub fn run_aquarela(
    image: &CanvasImage,
    stroke: &Stroke,
    params: &AquarelaParams<f64>,
    backend: &dyn Backend<f64>,
    seed: u64,
) -> Result<BrushEffect, BrushError> {
    params.validate()?;
    let masks = segment(stroke, params.n_segments, image.width(), image.height())?;
    let means = masks
        .iter()
        .map(|m| region_mean_hsl(image, m))
        .collect::<Result<Vec<_>, _>>()?;
    let colors = aquarela_colors(&means, params, backend, seed)?;
    let updates = colors
        .iter()
        .zip(&means)
        .enumerate()
        .map(|(i, (&(h, l), old))| SegmentColorUpdate::shift(i, old.h, old.l, h, l))
        .collect();
    Ok(BrushEffect::Segments { updates, masks })
}
