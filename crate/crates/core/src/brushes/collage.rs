//! Collage: a region's log singular values become a qubit, an asymmetric cloning machine
//! copies it, and the two imperfect copies rebuild the copy and paste patches.

use nalgebra::DMatrix;

use super::{BrushEffect, BrushError};
use crate::backend::Backend;
use crate::canvas::{CanvasImage, PixelMask, RegionRewrite};
use crate::color::{BlochAngles, RgbColor};
use crate::scalar::Real;
use crate::sim::{Circuit, Gate, PauliVector};

/// Singular values are clamped to this before taking logs.
pub const MIN_SINGULAR_VALUE: f64 = 1e-12;
/// Slack allowed on the cloning bound.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-12;

/// Qubit roles in [`uaqc_circuit`].
pub const QUBIT_COPY: usize = 0;
pub const QUBIT_ANCILLA: usize = 1;
pub const QUBIT_PASTE: usize = 2;

/// Thin SVD of a `pixels × 3` RGB matrix, singular values descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularTriple<T> {
    pub s_values: [T; 3],
    /// Left singular vectors, one row per pixel.
    pub u: Vec<[T; 3]>,
    /// Right singular vectors as columns: `v[channel][k]`.
    pub v: [[T; 3]; 3],
}

impl<T: Real> SingularTriple<T> {
    pub fn mean(&self) -> T {
        (self.s_values[0] + self.s_values[1] + self.s_values[2]) / T::lit(3.0)
    }

    /// `U · diag(s) · Vᵀ`, one RGB row per pixel.
    pub fn reconstruct_with(&self, s: &[T; 3]) -> Vec<[T; 3]> {
        self.u
            .iter()
            .map(|row| {
                let mut out = [T::zero(); 3];
                for (c, o) in out.iter_mut().enumerate() {
                    for k in 0..3 {
                        *o += row[k] * s[k] * self.v[c][k];
                    }
                }
                out
            })
            .collect()
    }

    pub fn reconstruct(&self) -> Vec<[T; 3]> {
        self.reconstruct_with(&self.s_values)
    }

    fn log_values(&self) -> [T; 3] {
        let floor = T::lit(MIN_SINGULAR_VALUE);
        self.s_values.map(|s| s.max(floor).ln())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollageParams {
    /// Copy-side cloning weight in `(0, 1]`; the paste side gets [`solve_s1`] of it.
    pub s0: f64,
    pub copy_region: PixelMask,
    /// Where the top-left of the copy region's bounding box lands.
    pub paste_origin: (i64, i64),
}

impl CollageParams {
    pub fn s1(&self) -> f64 {
        solve_s1(self.s0)
    }

    pub fn validate(&self) -> Result<(), BrushError> {
        if !(self.s0.is_finite() && self.s0 > 0.0 && self.s0 <= 1.0) {
            return Err(BrushError::InvalidParams(vec![super::ParamViolation::new(
                "s0",
                format!("{} outside (0, 1]", self.s0),
            )]));
        }
        Ok(())
    }
}

/// `s0² + s1² + s0·s1 − s0 − s1`; admissible cloners have this `≤ 0`.
pub fn cloning_constraint<T: Real>(s0: T, s1: T) -> T {
    s0 * s0 + s1 * s1 + s0 * s1 - s0 - s1
}

/// Largest `s1` allowed for a given `s0`.
pub fn solve_s1<T: Real>(s0: T) -> T {
    let one = T::one();
    let disc = ((one - s0) * (one + T::lit(3.0) * s0)).max(T::zero());
    (((one - s0) + disc.sqrt()) / T::lit(2.0)).max(T::zero()).min(one)
}

/// SVD of the region plus its Bloch orientation from the log singular values.
pub fn svd_encode<T: Real>(region_rgb: &[[T; 3]]) -> Result<(BlochAngles<T>, SingularTriple<T>), BrushError> {
    if region_rgb.len() < 3 {
        return Err(BrushError::RegionTooSmall {
            pixels: region_rgb.len(),
        });
    }
    let m = DMatrix::from_fn(region_rgb.len(), 3, |r, c| region_rgb[r][c].to_f64_lossy());
    let svd = m.svd(true, true);
    let (u, v_t) = (svd.u.expect("U requested"), svd.v_t.expect("Vᵀ requested"));
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let s_values = order.map(|k| T::lit(svd.singular_values[k]));
    let u_rows = (0..u.nrows())
        .map(|r| order.map(|k| T::lit(u[(r, k)])))
        .collect();
    let v = [0, 1, 2].map(|c| order.map(|k| T::lit(v_t[(k, c)])));
    let triple = SingularTriple {
        s_values,
        u: u_rows,
        v,
    };

    let [l0, l1, l2] = triple.log_values();
    let phi = (l1.atan2(l0) / T::TAU()).wrap_unit() * T::TAU();
    let theta = (l0 * l0 + l1 * l1).sqrt().atan2(l2);
    Ok((BlochAngles::new(phi, theta), triple))
}

/// `S_q = |E|·exp(|log S| · E/|E|) + (1 − |E|)·S̄`, elementwise; `[S̄; 3]` when `E = 0`.
///
/// `E` is first clamped to the unit ball.
pub fn map_singular_values<T: Real>(triple: &SingularTriple<T>, e: &PauliVector<T>) -> [T; 3] {
    let mean = triple.mean();
    let e = e.clamped_to_unit_ball();
    let n = e.norm();
    if n == T::zero() {
        return [mean; 3];
    }
    let logs = triple.log_values();
    let log_norm = (logs[0] * logs[0] + logs[1] * logs[1] + logs[2] * logs[2]).sqrt();
    e.as_array()
        .map(|ei| n * (log_norm * ei / n).exp() + (T::one() - n) * mean)
}

/// Copy qubit `C = 0`, helper `A = 1`, paste qubit `P = 2`.
///
/// `(A, P)` is prepared in `√((s0+s1)/2)|00⟩ + √((1−s0)/2)|01⟩ + √((1−s1)/2)|11⟩`,
/// kets written `|P A⟩` (little-endian), before the four cloning CNOTs.
pub fn uaqc_circuit<T: Real>(psi: &BlochAngles<T>, s0: T, s1: T) -> Result<Circuit<T>, BrushError> {
    let one = T::one();
    let in_range = s0 > T::zero() && s0 <= one && s1 >= T::zero() && s1 <= one;
    if !in_range || cloning_constraint(s0, s1) > T::lit(CONSTRAINT_TOLERANCE) {
        return Err(BrushError::CloningConstraint {
            s0: s0.to_f64_lossy(),
            s1: s1.to_f64_lossy(),
        });
    }
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let a = ((s0 + s1) * half).max(T::zero()).sqrt();
    let b = ((one - s0) * half).max(T::zero()).sqrt();
    let c = ((one - s1) * half).max(T::zero()).sqrt();

    let (cq, aq, pq) = (QUBIT_COPY, QUBIT_ANCILLA, QUBIT_PASTE);
    let mut circ = Circuit::new(3)?;
    circ.push(Gate::ry(cq, psi.theta))?;
    circ.push(Gate::rz(cq, psi.phi))?;
    circ.push(Gate::ry(aq, two * (b * b + c * c).sqrt().atan2(a)))?;
    circ.push(Gate::ry(pq, two * c.atan2(b)).controlled_by(aq))?;
    circ.push(Gate::cnot(cq, pq))?;
    circ.push(Gate::cnot(cq, aq))?;
    circ.push(Gate::cnot(pq, cq))?;
    circ.push(Gate::cnot(aq, cq))?;
    Ok(circ)
}

/// Rewrites the copy region with the `C` clone and its translate at `paste_origin` with
/// the `P` clone.
pub fn run_collage(
    image: &CanvasImage,
    params: &CollageParams,
    backend: &dyn Backend<f64>,
    seed: u64,
) -> Result<BrushEffect, BrushError> {
    params.validate()?;
    let copy = &params.copy_region;
    if copy.len() < 3 {
        return Err(BrushError::RegionTooSmall { pixels: copy.len() });
    }
    if let Some((x, y)) = copy.iter().find(|&(x, y)| !image.contains(x, y)) {
        return Err(crate::canvas::CanvasError::OutOfBounds { x, y }.into());
    }
    let (x0, y0, _, _) = copy.bounds();
    let (w, h) = image.dims();
    let paste = copy.translated(params.paste_origin.0 - x0 as i64, params.paste_origin.1 - y0 as i64, w, h)?;

    let rgb: Vec<[f64; 3]> = copy
        .iter()
        .map(|(x, y)| {
            let RgbColor { r, g, b } = RgbColor::<f64>::from_u8(image.pixel(x, y)[..3].try_into().unwrap());
            [r, g, b]
        })
        .collect();
    let (angles, triple) = svd_encode(&rgb)?;
    let circuit = uaqc_circuit(&angles, params.s0, params.s1())?;
    let e = backend.tomography(&circuit, &[QUBIT_COPY, QUBIT_PASTE], seed)?;

    let patch = |e: &PauliVector<f64>, mask: &PixelMask| {
        let rows = triple.reconstruct_with(&map_singular_values(&triple, e));
        RegionRewrite {
            pixels: mask
                .iter()
                .zip(rows)
                .map(|((x, y), [r, g, b])| (x, y, RgbColor::new(r.clamp(0.0, 1.0), g.clamp(0.0, 1.0), b.clamp(0.0, 1.0))))
                .collect(),
        }
    };
    Ok(BrushEffect::Rewrites(vec![patch(&e[0], copy), patch(&e[1], &paste)]))
}
