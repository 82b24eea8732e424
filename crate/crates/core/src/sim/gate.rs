use serde::{Deserialize, Serialize};

use super::{SimError, MAX_QUBITS};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    X,
    Rxx,
    Ryy,
    Rzz,
    Cnot,
}

impl GateKind {
    pub const ALL: [GateKind; 8] = [
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::X,
        GateKind::Rxx,
        GateKind::Ryy,
        GateKind::Rzz,
        GateKind::Cnot,
    ];

    pub fn is_parametric(self) -> bool {
        !matches!(self, GateKind::X | GateKind::Cnot)
    }

    pub fn target_arity(self) -> usize {
        match self {
            GateKind::Rxx | GateKind::Ryy | GateKind::Rzz => 2,
            _ => 1,
        }
    }
}

/// Which control value enables a controlled gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Fires on `|1⟩`.
    Positive,
    /// Fires on `|0⟩` (open-circle control).
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

/// A gate of the fixed brush gate set.
///
/// Rotations follow `Rα(λ) = exp(−i λ Pα / 2)` and `Rαα(λ) = exp(−i λ Pα⊗Pα / 2)`.
/// Any gate may carry extra controls; on basis states whose control bits do not match,
/// the gate acts as the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real + Serialize + serde::de::DeserializeOwned")]
pub struct Gate<T> {
    pub kind: GateKind,
    pub angle: Option<T>,
    pub targets: Vec<usize>,
    pub controls: Vec<Control>,
}

impl<T: Real> Gate<T> {
    fn rotation(kind: GateKind, targets: Vec<usize>, angle: T) -> Self {
        Gate {
            kind,
            angle: Some(angle),
            targets,
            controls: Vec::new(),
        }
    }

    pub fn rx(qubit: usize, angle: T) -> Self {
        Self::rotation(GateKind::Rx, vec![qubit], angle)
    }

    pub fn ry(qubit: usize, angle: T) -> Self {
        Self::rotation(GateKind::Ry, vec![qubit], angle)
    }

    pub fn rz(qubit: usize, angle: T) -> Self {
        Self::rotation(GateKind::Rz, vec![qubit], angle)
    }

    pub fn rxx(a: usize, b: usize, angle: T) -> Self {
        Self::rotation(GateKind::Rxx, vec![a, b], angle)
    }

    pub fn ryy(a: usize, b: usize, angle: T) -> Self {
        Self::rotation(GateKind::Ryy, vec![a, b], angle)
    }

    pub fn rzz(a: usize, b: usize, angle: T) -> Self {
        Self::rotation(GateKind::Rzz, vec![a, b], angle)
    }

    pub fn x(qubit: usize) -> Self {
        Gate {
            kind: GateKind::X,
            angle: None,
            targets: vec![qubit],
            controls: Vec::new(),
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate {
            kind: GateKind::Cnot,
            angle: None,
            targets: vec![target],
            controls: vec![Control {
                qubit: control,
                polarity: Polarity::Positive,
            }],
        }
    }

    /// Adds a control that fires on `|1⟩`.
    pub fn controlled_by(mut self, qubit: usize) -> Self {
        self.controls.push(Control {
            qubit,
            polarity: Polarity::Positive,
        });
        self
    }

    /// Adds a control that fires on `|0⟩`.
    pub fn neg_controlled_by(mut self, qubit: usize) -> Self {
        self.controls.push(Control {
            qubit,
            polarity: Polarity::Negative,
        });
        self
    }

    /// The inverse gate: rotations get their angle negated, `X` and `CNOT` are involutions.
    pub fn inverse(&self) -> Self {
        let mut g = self.clone();
        g.angle = g.angle.map(|a| -a);
        g
    }

    /// Every qubit the gate reads or writes, targets first.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets
            .iter()
            .copied()
            .chain(self.controls.iter().map(|c| c.qubit))
    }

    pub fn validate(&self, n_qubits: usize) -> Result<(), SimError> {
        let arity = self.kind.target_arity();
        if self.targets.len() != arity {
            return Err(SimError::Arity {
                kind: self.kind,
                expected: arity,
                got: self.targets.len(),
            });
        }
        if self.kind == GateKind::Cnot && self.controls.is_empty() {
            return Err(SimError::MissingControl);
        }
        match (self.kind.is_parametric(), self.angle) {
            (true, None) => return Err(SimError::MissingAngle(self.kind)),
            (true, Some(a)) if !a.is_finite() => return Err(SimError::NonFiniteAngle),
            (false, Some(_)) => return Err(SimError::UnexpectedAngle(self.kind)),
            _ => {}
        }
        let mut seen = 0u64;
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(SimError::QubitOutOfRange { qubit: q, n_qubits });
            }
            if seen & (1 << q) != 0 {
                return Err(SimError::OverlappingQubits(q));
            }
            seen |= 1 << q;
        }
        Ok(())
    }
}

/// An ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real + Serialize + serde::de::DeserializeOwned")]
pub struct Circuit<T> {
    pub n_qubits: usize,
    pub gates: Vec<Gate<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(n_qubits: usize) -> Result<Self, SimError> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(SimError::QubitCount(n_qubits));
        }
        Ok(Circuit {
            n_qubits,
            gates: Vec::new(),
        })
    }

    /// Appends a gate after checking it against the register.
    pub fn push(&mut self, gate: Gate<T>) -> Result<&mut Self, SimError> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn append(&mut self, other: &Circuit<T>) -> Result<&mut Self, SimError> {
        if other.n_qubits != self.n_qubits {
            return Err(SimError::QubitCountMismatch {
                state: self.n_qubits,
                circuit: other.n_qubits,
            });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(self)
    }

    pub fn inverse(&self) -> Self {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.n_qubits == 0 || self.n_qubits > MAX_QUBITS {
            return Err(SimError::QubitCount(self.n_qubits));
        }
        self.gates.iter().try_for_each(|g| g.validate(self.n_qubits))
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_and_range_are_checked() {
        let bad = Gate::<f64> {
            kind: GateKind::Rxx,
            angle: Some(0.1),
            targets: vec![0],
            controls: vec![],
        };
        assert!(matches!(bad.validate(2), Err(SimError::Arity { .. })));
        assert!(matches!(
            Gate::rx(3, 0.1f64).validate(3),
            Err(SimError::QubitOutOfRange { qubit: 3, .. })
        ));
        assert!(matches!(
            Gate::ry(1, 0.2f64).controlled_by(1).validate(2),
            Err(SimError::OverlappingQubits(1))
        ));
        assert!(matches!(
            Gate::rz(0, f64::NAN).validate(1),
            Err(SimError::NonFiniteAngle)
        ));
    }

    #[test]
    fn circuit_rejects_oversized_registers() {
        assert!(Circuit::<f64>::new(13).is_err());
        assert!(Circuit::<f64>::new(0).is_err());
        assert!(Circuit::<f64>::new(12).is_ok());
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let mut c = Circuit::new(2).unwrap();
        c.push(Gate::rx(0, 0.3)).unwrap();
        c.push(Gate::cnot(0, 1)).unwrap();
        let inv = c.inverse();
        assert_eq!(inv.gates[0].kind, GateKind::Cnot);
        assert_eq!(inv.gates[1].angle, Some(-0.3));
    }
}
