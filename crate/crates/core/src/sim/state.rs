use num_complex::Complex;

use super::gate::{Circuit, Gate, GateKind, Polarity};
use super::noise::{NoiseSpec, PauliNoise};
use super::{SimError, MAX_QUBITS};
use crate::scalar::Real;

/// Dense amplitude vector over `n_qubits` qubits.
///
/// Qubit 0 is the least-significant bit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn new(n_qubits: usize) -> Result<Self, SimError> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self, SimError> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(SimError::QubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(SimError::Argument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(StateVector { n_qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two and the norm one within `1e-6`.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self, SimError> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SimError::Argument(format!(
                "amplitude count {len} is not a power of two ≥ 2"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(SimError::QubitCount(n_qubits));
        }
        let state = StateVector { n_qubits, amps };
        let norm = state.norm();
        if (norm - T::one()).abs() > T::lit(1e-6) {
            return Err(SimError::NotNormalized(norm.to_f64_lossy()));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
            .sqrt()
    }

    pub fn apply(&mut self, gate: &Gate<T>) -> Result<(), SimError> {
        gate.validate(self.n_qubits)?;
        self.apply_unchecked(gate);
        Ok(())
    }

    pub fn run(&mut self, circuit: &Circuit<T>, noise: Option<&NoiseSpec>) -> Result<(), SimError> {
        if circuit.n_qubits != self.n_qubits {
            return Err(SimError::QubitCountMismatch {
                state: self.n_qubits,
                circuit: circuit.n_qubits,
            });
        }
        circuit.validate()?;
        let mut noise = noise.map(PauliNoise::new).transpose()?;
        for gate in &circuit.gates {
            self.apply_unchecked(gate);
            if let Some(noise) = noise.as_mut() {
                for (qubit, pauli) in noise.draw(gate) {
                    self.apply_pauli(qubit, pauli);
                }
            }
        }
        Ok(())
    }

    fn apply_unchecked(&mut self, gate: &Gate<T>) {
        let mut ctrl_mask = 0usize;
        let mut ctrl_value = 0usize;
        for c in &gate.controls {
            ctrl_mask |= 1 << c.qubit;
            if c.polarity == Polarity::Positive {
                ctrl_value |= 1 << c.qubit;
            }
        }
        let half = T::lit(0.5);
        let angle = gate.angle.unwrap_or_else(T::zero);
        let (s, c) = (angle * half).sin_cos();
        let zero = T::zero();
        match gate.kind {
            GateKind::X | GateKind::Cnot => {
                let one = Complex::new(T::one(), zero);
                let o = Complex::new(zero, zero);
                self.apply_1q(gate.targets[0], ctrl_mask, ctrl_value, [[o, one], [one, o]]);
            }
            GateKind::Rx => {
                let d = Complex::new(c, zero);
                let off = Complex::new(zero, -s);
                self.apply_1q(gate.targets[0], ctrl_mask, ctrl_value, [[d, off], [off, d]]);
            }
            GateKind::Ry => {
                let m = [
                    [Complex::new(c, zero), Complex::new(-s, zero)],
                    [Complex::new(s, zero), Complex::new(c, zero)],
                ];
                self.apply_1q(gate.targets[0], ctrl_mask, ctrl_value, m);
            }
            GateKind::Rz => {
                let o = Complex::new(zero, zero);
                let m = [[Complex::new(c, -s), o], [o, Complex::new(c, s)]];
                self.apply_1q(gate.targets[0], ctrl_mask, ctrl_value, m);
            }
            GateKind::Rxx | GateKind::Ryy | GateKind::Rzz => {
                self.apply_2q(gate.kind, gate.targets[0], gate.targets[1], ctrl_mask, ctrl_value, c, s);
            }
        }
    }

    fn apply_1q(&mut self, target: usize, ctrl_mask: usize, ctrl_value: usize, m: [[Complex<T>; 2]; 2]) {
        let bit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & bit != 0 || i & ctrl_mask != ctrl_value {
                continue;
            }
            let a0 = self.amps[i];
            let a1 = self.amps[i | bit];
            self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn apply_2q(&mut self, kind: GateKind, q0: usize, q1: usize, ctrl_mask: usize, ctrl_value: usize, c: T, s: T) {
        let b0 = 1usize << q0;
        let b1 = 1usize << q1;
        let zero = T::zero();
        let cos = Complex::new(c, zero);
        // −i·sin and +i·sin
        let mis = Complex::new(zero, -s);
        let pis = Complex::new(zero, s);
        for i in 0..self.amps.len() {
            if i & (b0 | b1) != 0 || i & ctrl_mask != ctrl_value {
                continue;
            }
            let (i00, i01, i10, i11) = (i, i | b0, i | b1, i | b0 | b1);
            let (a00, a01, a10, a11) = (self.amps[i00], self.amps[i01], self.amps[i10], self.amps[i11]);
            match kind {
                GateKind::Rxx => {
                    self.amps[i00] = cos * a00 + mis * a11;
                    self.amps[i11] = cos * a11 + mis * a00;
                    self.amps[i01] = cos * a01 + mis * a10;
                    self.amps[i10] = cos * a10 + mis * a01;
                }
                GateKind::Ryy => {
                    // YY flips both bits with sign −1 on equal-parity pairs.
                    self.amps[i00] = cos * a00 + pis * a11;
                    self.amps[i11] = cos * a11 + pis * a00;
                    self.amps[i01] = cos * a01 + mis * a10;
                    self.amps[i10] = cos * a10 + mis * a01;
                }
                GateKind::Rzz => {
                    let even = Complex::new(c, -s);
                    let odd = Complex::new(c, s);
                    self.amps[i00] = even * a00;
                    self.amps[i11] = even * a11;
                    self.amps[i01] = odd * a01;
                    self.amps[i10] = odd * a10;
                }
                _ => unreachable!("single-target kind routed to two-qubit kernel"),
            }
        }
    }

    fn apply_pauli(&mut self, qubit: usize, pauli: Pauli) {
        let bit = 1usize << qubit;
        let zero = T::zero();
        for i in 0..self.amps.len() {
            match pauli {
                Pauli::X => {
                    if i & bit == 0 {
                        self.amps.swap(i, i | bit);
                    }
                }
                Pauli::Y => {
                    if i & bit == 0 {
                        // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
                        let a0 = self.amps[i];
                        let a1 = self.amps[i | bit];
                        self.amps[i] = Complex::new(zero, -T::one()) * a1;
                        self.amps[i | bit] = Complex::new(zero, T::one()) * a0;
                    }
                }
                Pauli::Z => {
                    if i & bit != 0 {
                        self.amps[i] = -self.amps[i];
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pauli {
    X,
    Y,
    Z,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: Complex<f64>, b: Complex<f64>) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn ry_pi_flips_zero_to_one() {
        let mut s = StateVector::<f64>::new(1).unwrap();
        s.apply(&Gate::ry(0, PI)).unwrap();
        assert!(s.amplitudes()[0].norm() < 1e-15);
        assert!((s.amplitudes()[1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negative_control_fires_on_zero() {
        // control qubit 1 is |0⟩, target qubit 0 flips: |00⟩ → |01⟩ (index 1)
        let mut s = StateVector::<f64>::new(2).unwrap();
        let mut g = Gate::cnot(1, 0);
        g.controls[0].polarity = Polarity::Negative;
        s.apply(&g).unwrap();
        assert!(close(s.amplitudes()[1], Complex::new(1.0, 0.0)));
    }

    #[test]
    fn positive_control_is_identity_when_control_is_zero() {
        let mut s = StateVector::<f64>::basis(2, 0).unwrap();
        s.apply(&Gate::rx(0, 1.1).controlled_by(1)).unwrap();
        assert!(close(s.amplitudes()[0], Complex::new(1.0, 0.0)));
    }

    #[test]
    fn pauli_y_matches_definition() {
        let mut s = StateVector::<f64>::new(1).unwrap();
        s.apply_pauli(0, Pauli::Y);
        assert!(close(s.amplitudes()[1], Complex::new(0.0, 1.0)));
        s.apply_pauli(0, Pauli::Y);
        assert!(close(s.amplitudes()[0], Complex::new(1.0, 0.0)));
    }

    #[test]
    fn rejects_bad_amplitudes() {
        assert!(StateVector::<f64>::from_amplitudes(vec![Complex::new(1.0, 0.0); 3]).is_err());
        assert!(matches!(
            StateVector::<f64>::from_amplitudes(vec![Complex::new(1.0, 0.0); 2]),
            Err(SimError::NotNormalized(_))
        ));
    }

    #[test]
    fn mismatched_circuit_is_rejected() {
        let mut s = StateVector::<f64>::new(2).unwrap();
        let c = Circuit::<f64>::new(3).unwrap();
        assert!(matches!(
            s.run(&c, None),
            Err(SimError::QubitCountMismatch { state: 2, circuit: 3 })
        ));
    }
}
