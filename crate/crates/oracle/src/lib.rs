//! Dense-matrix reference pipelines for testing `qbrush-core`.
//!
//! Nothing here shares code with the core simulator: every gate is built as a full
//! `2ⁿ × 2ⁿ` matrix from Kronecker products, rotations come from a generic matrix
//! exponential, and controls are written with projectors. Slow, but easy to audit.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type Mat = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

pub fn pauli(p: Pauli) -> Mat {
    let m = match p {
        Pauli::I => [ONE, ZERO, ZERO, ONE],
        Pauli::X => [ZERO, ONE, ONE, ZERO],
        Pauli::Y => [ZERO, -I, I, ZERO],
        Pauli::Z => [ONE, ZERO, ZERO, -ONE],
    };
    Mat::from_row_slice(2, 2, &m)
}

fn projector(bit: u8) -> Mat {
    let mut m = Mat::zeros(2, 2);
    m[(bit as usize, bit as usize)] = ONE;
    m
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

/// `op` on qubit `q` of `n`, identity elsewhere. Qubit 0 is the rightmost factor.
pub fn embed(op: &Mat, q: usize, n: usize) -> Mat {
    let mut out = Mat::identity(1, 1);
    for k in (0..n).rev() {
        let f = if k == q { op.clone() } else { Mat::identity(2, 2) };
        out = kron(&out, &f);
    }
    out
}

/// `exp(A)` by scaling and squaring a truncated Taylor series.
pub fn expm(a: &Mat) -> Mat {
    let norm = a.iter().map(|z| z.norm()).sum::<f64>();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = a * Complex64::new(scale, 0.0);
    let dim = a.nrows();
    let mut sum = Mat::identity(dim, dim);
    let mut term = Mat::identity(dim, dim);
    for k in 1..=24 {
        term = &term * &a * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(−i λ G / 2)` for a Hermitian generator `G`.
pub fn rotation(generator: &Mat, lambda: f64) -> Mat {
    expm(&(generator * Complex64::new(0.0, -lambda / 2.0)))
}

pub fn rot1(p: Pauli, q: usize, n: usize, lambda: f64) -> Mat {
    rotation(&embed(&pauli(p), q, n), lambda)
}

pub fn rot2(p: Pauli, a: usize, b: usize, n: usize, lambda: f64) -> Mat {
    rotation(&(embed(&pauli(p), a, n) * embed(&pauli(p), b, n)), lambda)
}

/// `u` conditioned on qubit `c` being `|fire_on⟩`.
pub fn controlled(u: &Mat, c: usize, fire_on: u8, n: usize) -> Mat {
    embed(&projector(1 - fire_on), c, n) + embed(&projector(fire_on), c, n) * u
}

pub fn x_gate(q: usize, n: usize) -> Mat {
    embed(&pauli(Pauli::X), q, n)
}

pub fn cnot(c: usize, t: usize, n: usize) -> Mat {
    controlled(&x_gate(t, n), c, 1, n)
}

pub fn zero_state(n: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; 1 << n];
    v[0] = ONE;
    v
}

pub fn apply(state: &mut Vec<Complex64>, u: &Mat) {
    let v = nalgebra::DVector::from_vec(std::mem::take(state));
    *state = (u * v).data.into();
}

pub fn expectation(state: &[Complex64], op: &Mat) -> f64 {
    let v = nalgebra::DVector::from_column_slice(state);
    (v.adjoint() * op * &v)[(0, 0)].re
}

/// `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` of qubit `q`.
pub fn bloch(state: &[Complex64], q: usize) -> [f64; 3] {
    let n = state.len().trailing_zeros() as usize;
    [Pauli::X, Pauli::Y, Pauli::Z].map(|p| expectation(state, &embed(&pauli(p), q, n)))
}

/// Reduced density matrix of qubit `q` from `Tr(ρ σ)` reconstruction.
pub fn reduced_density(state: &[Complex64], q: usize) -> Mat {
    let [x, y, z] = bloch(state, q);
    (pauli(Pauli::I) + pauli(Pauli::X) * Complex64::new(x, 0.0) + pauli(Pauli::Y) * Complex64::new(y, 0.0)
        + pauli(Pauli::Z) * Complex64::new(z, 0.0))
        * Complex64::new(0.5, 0.0)
}

/// Pure single-qubit state `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` (up to global phase).
pub fn qubit_ket(phi: f64, theta: f64) -> [Complex64; 2] {
    [
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ]
}

pub fn fidelity(rho: &Mat, ket: &[Complex64; 2]) -> f64 {
    let v = nalgebra::DVector::from_column_slice(ket);
    (v.adjoint() * rho * &v)[(0, 0)].re
}

/// `(h, l) → (φ, θ) = (2πh, πl)`.
pub fn encode(h: f64, l: f64) -> (f64, f64) {
    (TAU * h, PI * l)
}

/// Inverse of [`encode`]; the azimuth is undefined within `1e-6` of the z axis, where
/// `fallback_h` is returned. A vanishing vector decodes to `l = 0.5`.
pub fn decode(e: [f64; 3], fallback_h: f64) -> (f64, f64) {
    let r = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
    let rxy = e[0].hypot(e[1]);
    if r < 1e-6 {
        return (fallback_h, 0.5);
    }
    let theta = rxy.atan2(e[2]);
    if rxy < 1e-6 {
        return (fallback_h, if e[2] >= 0.0 { 0.0 } else { 1.0 });
    }
    let h = e[1].atan2(e[0]) / TAU;
    (h - h.floor(), theta / PI)
}

/// Circular distance between two hues in turns.
pub fn hue_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

fn prepare(n: usize, angles: &[(f64, f64)]) -> Vec<Complex64> {
    let mut s = zero_state(n);
    for (q, &(phi, theta)) in angles.iter().enumerate() {
        apply(&mut s, &rot1(Pauli::Y, q, n, theta));
        apply(&mut s, &rot1(Pauli::Z, q, n, phi));
    }
    s
}

/// Aquarela on explicit segment colours: returns decoded `(h, l)` per segment.
pub fn aquarela(segments_hl: &[(f64, f64)], brush_hl: (f64, f64), gamma: f64) -> Vec<(f64, f64)> {
    let k = segments_hl.len();
    let n = k + 1;
    let anc = k;
    let angles: Vec<(f64, f64)> = segments_hl.iter().map(|&(h, l)| encode(h, l)).collect();
    let (phi_b, theta_b) = encode(brush_hl.0, brush_hl.1);
    let mut s = prepare(n, &angles);
    apply(&mut s, &x_gate(anc, n));
    for (q, &(phi, theta)) in angles.iter().enumerate() {
        apply(&mut s, &controlled(&rot1(Pauli::Z, q, n, -gamma * phi), anc, 1, n));
        apply(&mut s, &controlled(&rot1(Pauli::Y, q, n, gamma * (theta_b - theta)), anc, 1, n));
        apply(&mut s, &controlled(&rot1(Pauli::Z, q, n, gamma * phi_b), anc, 1, n));
        apply(&mut s, &controlled(&rot1(Pauli::Y, anc, n, PI / 3.0), q, 0, n));
    }
    (0..k).map(|q| decode(bloch(&s, q), segments_hl[q].0)).collect()
}

/// Smudge on explicit stroke colours; `pump` selects the brightening variant.
pub fn smudge(strokes_hl: &[(f64, f64)], gamma: f64, pump: bool) -> Vec<(f64, f64)> {
    let k = strokes_hl.len();
    let n = k + 1;
    let anc = k;
    let angles: Vec<(f64, f64)> = strokes_hl.iter().map(|&(h, l)| encode(h, l)).collect();
    let mut s = prepare(n, &angles);
    for q in 0..k {
        if pump {
            apply(&mut s, &x_gate(q, n));
        }
        apply(&mut s, &controlled(&rot1(Pauli::Y, anc, n, gamma), q, 1, n));
        apply(&mut s, &cnot(anc, q, n));
        if pump {
            apply(&mut s, &x_gate(q, n));
        }
    }
    (0..k).map(|q| decode(bloch(&s, q), strokes_hl[q].0)).collect()
}

fn chain_bonds(n: usize) -> Vec<(usize, usize)> {
    match n {
        1 => vec![],
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// `H = ½ Σ (−XX − YY − ZZ) + ½ Σ (X + Z)` on a periodic chain.
pub fn heisenberg_hamiltonian(n: usize) -> Mat {
    let dim = 1 << n;
    let mut h = Mat::zeros(dim, dim);
    let half = Complex64::new(0.5, 0.0);
    for (a, b) in chain_bonds(n) {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            h -= embed(&pauli(p), a, n) * embed(&pauli(p), b, n) * half;
        }
    }
    for q in 0..n {
        h += (embed(&pauli(Pauli::X), q, n) + embed(&pauli(Pauli::Z), q, n)) * half;
    }
    h
}

/// One first-order Trotter step as a dense unitary, each factor exponentiated separately.
pub fn trotter_step(n: usize, dt: f64) -> Mat {
    let dim = 1 << n;
    let mut u = Mat::identity(dim, dim);
    let mut push = |g: Mat| u = &g * &u;
    for (a, b) in chain_bonds(n) {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            push(rot2(p, a, b, n, -dt));
        }
    }
    for q in 0..n {
        push(rot1(Pauli::Z, q, n, dt));
    }
    for q in 0..n {
        push(rot1(Pauli::X, q, n, dt));
    }
    u
}

fn magnetization(state: &[Complex64], n: usize) -> f64 {
    (0..n).map(|q| bloch(state, q)[2]).sum::<f64>() / n as f64
}

/// `⟨M_z⟩` after `steps` Trotter steps from the uniform product state of colour `(h, l)`.
pub fn trotter_magnetization(n: usize, hl: (f64, f64), dt: f64, steps: usize) -> f64 {
    let (phi, theta) = encode(hl.0, hl.1);
    let mut s = prepare(n, &vec![(phi, theta); n]);
    let u = trotter_step(n, dt);
    for _ in 0..steps {
        apply(&mut s, &u);
    }
    magnetization(&s, n)
}

/// `⟨M_z⟩` under the exact propagator `exp(−iHt)`.
pub fn exact_magnetization(n: usize, hl: (f64, f64), t: f64) -> f64 {
    let (phi, theta) = encode(hl.0, hl.1);
    let mut s = prepare(n, &vec![(phi, theta); n]);
    apply(&mut s, &expm(&(heisenberg_hamiltonian(n) * Complex64::new(0.0, -t))));
    magnetization(&s, n)
}

/// Heisenbrush colours `[h, s, l]` for steps `1..=n_steps`.
pub fn heisen(user_hsl: [f64; 3], gamma: f64, n: usize, n_steps: usize, dt: f64) -> Vec<[f64; 3]> {
    let (phi, theta) = encode(user_hsl[0], user_hsl[2]);
    let mut s = prepare(n, &vec![(phi, theta); n]);
    let u = trotter_step(n, dt);
    (0..n_steps)
        .map(|_| {
            apply(&mut s, &u);
            let m = magnetization(&s, n);
            user_hsl.map(|v| gamma * (v + m).rem_euclid(1.0) + (1.0 - gamma) * v)
        })
        .collect()
}

/// Cloner output state. `(A, P)` is written directly from its amplitudes rather than
/// synthesized, then the four cloning CNOTs act. Qubits: C = 0, A = 1, P = 2.
pub fn uaqc_state(phi: f64, theta: f64, s0: f64, s1: f64) -> Vec<Complex64> {
    let psi = qubit_ket(phi, theta);
    let a = ((s0 + s1) / 2.0).sqrt();
    let b = ((1.0 - s0) / 2.0).sqrt();
    let c = ((1.0 - s1) / 2.0).sqrt();
    // (A, P) amplitudes indexed by A + 2P.
    let helper = [a, b, 0.0, c];
    let mut s = vec![ZERO; 8];
    for (ap, amp) in helper.iter().enumerate() {
        for (cbit, pc) in psi.iter().enumerate() {
            s[cbit + 2 * ap] = pc * amp;
        }
    }
    for (ctl, tgt) in [(0, 2), (0, 1), (2, 0), (1, 0)] {
        apply(&mut s, &cnot(ctl, tgt, 3));
    }
    s
}

/// `(C, P)` Bloch vectors after cloning.
pub fn uaqc_bloch(phi: f64, theta: f64, s0: f64, s1: f64) -> ([f64; 3], [f64; 3]) {
    let s = uaqc_state(phi, theta, s0, s1);
    (bloch(&s, 0), bloch(&s, 2))
}

/// Collage singular-value map, written out per component.
pub fn collage_map(s: [f64; 3], e: [f64; 3]) -> [f64; 3] {
    let mean = (s[0] + s[1] + s[2]) / 3.0;
    let mut e = e;
    let en = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
    if en > 1.0 {
        e = e.map(|x| x / en);
    }
    let en = en.min(1.0);
    if en == 0.0 {
        return [mean; 3];
    }
    let logs = s.map(|v| v.max(1e-12).ln());
    let ln = (logs[0] * logs[0] + logs[1] * logs[1] + logs[2] * logs[2]).sqrt();
    [0, 1, 2].map(|k| en * (ln / en * e[k]).exp() + (1.0 - en) * mean)
}

/// Collage orientation `(φ, θ)` from singular values.
pub fn collage_angles(s: [f64; 3]) -> (f64, f64) {
    let l = s.map(|v| v.max(1e-12).ln());
    let phi = l[1].atan2(l[0]).rem_euclid(TAU);
    let theta = (l[0] * l[0] + l[1] * l[1]).sqrt().atan2(l[2]);
    (phi, theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_pauli_rotation_is_closed_form() {
        let u = rot1(Pauli::Y, 0, 1, 1.2);
        assert!((u[(0, 0)].re - 0.6f64.cos()).abs() < 1e-14);
        assert!((u[(1, 0)].re - 0.6f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn embedding_puts_qubit_zero_in_lsb() {
        let mut s = zero_state(2);
        apply(&mut s, &x_gate(0, 2));
        assert!((s[1].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negative_control_fires_on_zero() {
        let mut s = zero_state(2);
        apply(&mut s, &controlled(&x_gate(1, 2), 0, 0, 2));
        assert!((s[2].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn symmetric_cloner_fidelity() {
        let s = 2.0 / 3.0;
        let (phi, theta) = (0.7, 1.1);
        let st = uaqc_state(phi, theta, s, s);
        let ket = qubit_ket(phi, theta);
        assert!((fidelity(&reduced_density(&st, 0), &ket) - 5.0 / 6.0).abs() < 1e-12);
        assert!((fidelity(&reduced_density(&st, 2), &ket) - 5.0 / 6.0).abs() < 1e-12);
    }
}
