use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gate::Gate;
use super::state::Pauli;
use super::SimError;
use crate::scalar::Real;

/// Per-gate depolarizing trajectory noise.
///
/// After every gate, each qubit the gate touched independently suffers a uniformly
/// random Pauli error with the gate's probability. Gates touching one qubit use
/// `p_depolarize_1q`; gates touching two or more (including controls) use
/// `p_depolarize_2q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    pub p_depolarize_1q: f64,
    pub p_depolarize_2q: f64,
    #[serde(default)]
    pub seed: u64,
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<(), SimError> {
        for p in [self.p_depolarize_1q, self.p_depolarize_2q] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimError::Probability(p));
            }
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub(crate) struct PauliNoise {
    p1: f64,
    p2: f64,
    rng: ChaCha8Rng,
}

impl PauliNoise {
    pub(crate) fn new(spec: &NoiseSpec) -> Result<Self, SimError> {
        spec.validate()?;
        Ok(PauliNoise {
            p1: spec.p_depolarize_1q,
            p2: spec.p_depolarize_2q,
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
        })
    }

    /// Errors to inject after `gate`, in the gate's qubit order.
    pub(crate) fn draw<T: Real>(&mut self, gate: &Gate<T>) -> Vec<(usize, Pauli)> {
        let touched: Vec<usize> = gate.qubits().collect();
        let p = if touched.len() == 1 { self.p1 } else { self.p2 };
        let mut errors = Vec::new();
        for q in touched {
            if self.rng.random::<f64>() < p {
                let pauli = match self.rng.random_range(0..3u8) {
                    0 => Pauli::X,
                    1 => Pauli::Y,
                    _ => Pauli::Z,
                };
                errors.push((q, pauli));
            }
        }
        errors
    }
}

/// SplitMix64 finaliser; derives independent stream seeds from a base seed.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
