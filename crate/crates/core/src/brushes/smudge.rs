//! Smudge: a cascade of amplitude-damping (or pumping) interactions through one shared
//! ancilla that is never reset, so earlier strokes leak into later ones.

use super::{check_unit_interval, finish, BrushEffect, BrushError, SegmentColorUpdate};
use crate::backend::Backend;
use crate::canvas::{rasterize, region_mean_hsl, CanvasImage, Stroke};
use crate::color::{decode_bloch, encode_hl, BlochAngles, HslColor};
use crate::scalar::Real;
use crate::sim::{Circuit, Gate, MAX_QUBITS};

pub const MAX_STROKES: usize = MAX_QUBITS - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SmudgeControl {
    /// Bit 0: damp toward `|0⟩`, darkening.
    #[default]
    Damp,
    /// Bit 1: pump toward `|1⟩`, brightening.
    Pump,
}

impl SmudgeControl {
    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(SmudgeControl::Damp),
            1 => Some(SmudgeControl::Pump),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            SmudgeControl::Damp => 0,
            SmudgeControl::Pump => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmudgeParams<T> {
    pub control: SmudgeControl,
    /// Damping angle in `[0, π]`; `π` collapses the first stroke completely.
    pub gamma: T,
}

impl<T: Real> SmudgeParams<T> {
    pub fn validate(&self) -> Result<(), BrushError> {
        let mut v = Vec::new();
        check_unit_interval(&mut v, "gamma", self.gamma, T::PI());
        finish(v)
    }
}

/// Stroke qubits are `0..N`, the shared ancilla is qubit `N`.
pub fn smudge_circuit<T: Real>(
    strokes: &[BlochAngles<T>],
    gamma: T,
    control: SmudgeControl,
) -> Result<Circuit<T>, BrushError> {
    let n = strokes.len();
    if !(1..=MAX_STROKES).contains(&n) {
        return Err(BrushError::InputCount {
            brush: "smudge",
            got: n,
            max: MAX_STROKES,
        });
    }
    let ancilla = n;
    let mut c = Circuit::new(n + 1)?;
    for (q, a) in strokes.iter().enumerate() {
        c.push(Gate::ry(q, a.theta))?;
        c.push(Gate::rz(q, a.phi))?;
    }
    let pump = control == SmudgeControl::Pump;
    for q in 0..n {
        if pump {
            c.push(Gate::x(q))?;
        }
        c.push(Gate::ry(ancilla, gamma).controlled_by(q))?;
        c.push(Gate::cnot(ancilla, q))?;
        if pump {
            c.push(Gate::x(q))?;
        }
    }
    Ok(c)
}

/// New `(h, l)` for each stroke's mean colour, in submission order.
pub fn smudge_colors<T: Real>(
    stroke_colors: &[HslColor<T>],
    params: &SmudgeParams<T>,
    backend: &dyn Backend<T>,
    seed: u64,
) -> Result<Vec<(T, T)>, BrushError> {
    params.validate()?;
    let angles: Vec<BlochAngles<T>> = stroke_colors.iter().map(encode_hl).collect();
    let circuit = smudge_circuit(&angles, params.gamma, params.control)?;
    let qubits: Vec<usize> = (0..stroke_colors.len()).collect();
    let tomography = backend.tomography(&circuit, &qubits, seed)?;
    Ok(tomography
        .iter()
        .zip(stroke_colors)
        .map(|(e, old)| decode_bloch(e, old.h))
        .collect())
}

/// One qubit per stroke; each stroke's whole mask is shifted by its decoded change.
pub fn run_smudge(
    image: &CanvasImage,
    strokes: &[Stroke],
    params: &SmudgeParams<f64>,
    backend: &dyn Backend<f64>,
    seed: u64,
) -> Result<BrushEffect, BrushError> {
    params.validate()?;
    if strokes.is_empty() || strokes.len() > MAX_STROKES {
        return Err(BrushError::InputCount {
            brush: "smudge",
            got: strokes.len(),
            max: MAX_STROKES,
        });
    }
    let (w, h) = image.dims();
    let masks = strokes.iter().map(|s| rasterize(s, w, h)).collect::<Result<Vec<_>, _>>()?;
    let means = masks
        .iter()
        .map(|m| region_mean_hsl(image, m))
        .collect::<Result<Vec<_>, _>>()?;
    let colors = smudge_colors(&means, params, backend, seed)?;
    let updates = colors
        .iter()
        .zip(&means)
        .enumerate()
        .map(|(i, (&(h, l), old))| SegmentColorUpdate::shift(i, old.h, old.l, h, l))
        .collect();
    Ok(BrushEffect::Segments { updates, masks })
}
