//! Heisenbrush: colours from the magnetization of a Trotterized periodic Heisenberg chain
//! with transverse and longitudinal fields,
//!
//! `H = ½ Σₙ (−XₙXₙ₊₁ − YₙYₙ₊₁ − ZₙZₙ₊₁ + Xₙ + Zₙ)`.

use super::{check_color, check_unit_interval, finish, BrushEffect, BrushError, ParamViolation, SegmentColorUpdate};
use crate::backend::Backend;
use crate::canvas::{rasterize, segment, CanvasImage, Stroke};
use crate::color::{encode_hl, HslColor};
use crate::scalar::Real;
use crate::sim::{Circuit, Gate};

pub const MAX_CHAIN: usize = 10;
pub const MAX_STEPS: usize = 10;
pub const DEFAULT_DT: f64 = 0.1;
/// Stroke radius (px) per chain qubit.
pub const PX_PER_QUBIT: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeisenMode {
    /// One stroke, split into `n_steps` segments.
    Continuous,
    /// One stroke per time step.
    Discrete,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenParams<T> {
    pub mode: HeisenMode,
    pub user_color: HslColor<T>,
    pub gamma: T,
    pub n_qubits: usize,
    pub n_steps: usize,
    pub dt: T,
}

impl<T: Real> HeisenParams<T> {
    pub fn new(mode: HeisenMode, user_color: HslColor<T>, gamma: T, n_qubits: usize, n_steps: usize) -> Self {
        HeisenParams {
            mode,
            user_color,
            gamma,
            n_qubits,
            n_steps,
            dt: T::lit(DEFAULT_DT),
        }
    }

    pub fn validate(&self) -> Result<(), BrushError> {
        let mut v = Vec::new();
        check_color(&mut v, "color", &self.user_color);
        check_unit_interval(&mut v, "gamma", self.gamma, T::one());
        if !(1..=MAX_CHAIN).contains(&self.n_qubits) {
            v.push(ParamViolation::new("n_qubits", format!("{} outside [1, {MAX_CHAIN}]", self.n_qubits)));
        }
        if !(1..=MAX_STEPS).contains(&self.n_steps) {
            v.push(ParamViolation::new("n_steps", format!("{} outside [1, {MAX_STEPS}]", self.n_steps)));
        }
        if !(self.dt.is_finite() && self.dt > T::zero()) {
            v.push(ParamViolation::new("dt", format!("{} is not a positive time step", self.dt)));
        }
        finish(v)
    }
}

/// Chain length for a stroke radius: `clamp(round(radius / 5 px), 1, 10)`.
pub fn qubits_for_radius(radius: f64) -> usize {
    ((radius / PX_PER_QUBIT).round() as i64).clamp(1, MAX_CHAIN as i64) as usize
}

/// Neighbour pairs with periodic boundary. Two sites share a single bond, one site none.
fn bonds(n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// One first-order Trotter step: `Rxx, Ryy, Rzz(−dt)` on every bond, then `Rz(dt)` on
/// every site, then `Rx(dt)` on every site.
pub fn trotter_step_circuit<T: Real>(n_qubits: usize, dt: T) -> Result<Circuit<T>, BrushError> {
    if !(1..=MAX_CHAIN).contains(&n_qubits) {
        return Err(BrushError::InputCount {
            brush: "heisenbrush",
            got: n_qubits,
            max: MAX_CHAIN,
        });
    }
    let mut c = Circuit::new(n_qubits)?;
    for (a, b) in bonds(n_qubits) {
        c.push(Gate::rxx(a, b, -dt))?;
        c.push(Gate::ryy(a, b, -dt))?;
        c.push(Gate::rzz(a, b, -dt))?;
    }
    for q in 0..n_qubits {
        c.push(Gate::rz(q, dt))?;
    }
    for q in 0..n_qubits {
        c.push(Gate::rx(q, dt))?;
    }
    Ok(c)
}

/// `γ·((V + m) mod 1) + (1 − γ)·V`, applied to each of H, S and L.
pub fn color_from_magnetization<T: Real>(user: &HslColor<T>, magnetization: T, gamma: T) -> HslColor<T> {
    let mix = |v: T| gamma * (v + magnetization).wrap_unit() + (T::one() - gamma) * v;
    HslColor::new(mix(user.h), mix(user.s), mix(user.l))
}

/// One colour per time step `n = 1..=n_steps`.
pub fn heisen_colors<T: Real>(
    params: &HeisenParams<T>,
    backend: &dyn Backend<T>,
    seed: u64,
) -> Result<Vec<HslColor<T>>, BrushError> {
    params.validate()?;
    let n = params.n_qubits;
    let angles = encode_hl(&params.user_color);
    let mut prep = Circuit::new(n)?;
    for q in 0..n {
        prep.push(Gate::ry(q, angles.theta))?;
        prep.push(Gate::rz(q, angles.phi))?;
    }
    let step = trotter_step_circuit(n, params.dt)?;
    let qubits: Vec<usize> = (0..n).collect();
    let series = backend.tomography_series(&prep, &step, params.n_steps, &qubits, seed)?;
    let count = T::from_usize(n).unwrap();
    Ok(series
        .iter()
        .map(|bloch| {
            let m = bloch.iter().fold(T::zero(), |acc, e| acc + e.ez) / count;
            color_from_magnetization(&params.user_color, m, params.gamma)
        })
        .collect())
}

/// Paints opaque fills: segment `n` (continuous) or stroke `n` (discrete) gets colour `n`.
pub fn run_heisenbrush(
    image: &CanvasImage,
    strokes: &[Stroke],
    params: &HeisenParams<f64>,
    backend: &dyn Backend<f64>,
    seed: u64,
) -> Result<BrushEffect, BrushError> {
    let (w, h) = image.dims();
    let (masks, params) = match params.mode {
        HeisenMode::Continuous => {
            let [stroke] = strokes else {
                return Err(BrushError::InputCount {
                    brush: "heisenbrush (continuous)",
                    got: strokes.len(),
                    max: 1,
                });
            };
            (segment(stroke, params.n_steps, w, h)?, *params)
        }
        HeisenMode::Discrete => {
            if strokes.is_empty() || strokes.len() > MAX_STEPS {
                return Err(BrushError::InputCount {
                    brush: "heisenbrush (discrete)",
                    got: strokes.len(),
                    max: MAX_STEPS,
                });
            }
            let masks = strokes.iter().map(|s| rasterize(s, w, h)).collect::<Result<Vec<_>, _>>()?;
            (masks, HeisenParams { n_steps: strokes.len(), ..*params })
        }
    };
    let colors = heisen_colors(&params, backend, seed)?;
    let updates = colors
        .into_iter()
        .enumerate()
        .map(|(i, c)| SegmentColorUpdate::overwrite(i, c))
        .collect();
    Ok(BrushEffect::Segments { updates, masks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::ExactBackend;
    use crate::sim::{GateKind, StateVector};

    #[test]
    fn three_site_step_matches_figure_layout() {
        let c = trotter_step_circuit(3, 0.1f64).unwrap();
        assert_eq!(c.len(), 15);
        let pairs: Vec<Vec<usize>> = c.gates[..9].iter().map(|g| g.targets.clone()).collect();
        assert_eq!(pairs[0], vec![0, 1]);
        assert_eq!(pairs[3], vec![1, 2]);
        assert_eq!(pairs[6], vec![2, 0]);
        let kinds: Vec<GateKind> = c.gates.iter().map(|g| g.kind).collect();
        assert_eq!(&kinds[..3], &[GateKind::Rxx, GateKind::Ryy, GateKind::Rzz]);
        assert!(kinds[9..12].iter().all(|&k| k == GateKind::Rz));
        assert!(kinds[12..].iter().all(|&k| k == GateKind::Rx));
        assert!(c.gates[..9].iter().all(|g| g.angle == Some(-0.1)));
    }

    #[test]
    fn small_chains_have_no_duplicate_bonds() {
        assert_eq!(trotter_step_circuit(1, 0.1f64).unwrap().len(), 2);
        assert_eq!(trotter_step_circuit(2, 0.1f64).unwrap().len(), 3 + 4);
        assert!(trotter_step_circuit(11, 0.1f64).is_err());
    }

    #[test]
    fn zero_dt_is_identity() {
        let mut s = StateVector::<f64>::new(3).unwrap();
        s.apply(&Gate::ry(0, 0.7)).unwrap();
        s.apply(&Gate::rx(2, 1.9)).unwrap();
        let before = s.clone();
        s.run(&trotter_step_circuit(3, 0.0).unwrap(), None).unwrap();
        for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn gamma_zero_returns_user_colour() {
        let user = HslColor::new(0.6, 0.8, 0.4);
        let p = HeisenParams::new(HeisenMode::Continuous, user, 0.0, 3, 4);
        let colors = heisen_colors(&p, &ExactBackend, 0).unwrap();
        assert_eq!(colors, vec![user; 4]);
    }

    #[test]
    fn magnetization_formula_wraps() {
        let c = color_from_magnetization(&HslColor::new(0.7f64, 0.5, 0.9), 0.5, 1.0);
        assert!((c.h - 0.2).abs() < 1e-12 && c.s.abs() < 1e-12 && (c.l - 0.4).abs() < 1e-12);
    }

    #[test]
    fn radius_maps_to_chain_length() {
        assert_eq!(qubits_for_radius(0.5), 1);
        assert_eq!(qubits_for_radius(12.0), 2);
        assert_eq!(qubits_for_radius(500.0), 10);
    }
}
