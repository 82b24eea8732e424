//! Execution backends: how a brush circuit becomes Bloch vectors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::scalar::Real;
use crate::sim::{derive_seed, sample_components, Circuit, NoiseSpec, PauliVector, SimError, StateVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BackendError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("backend not configured: {0}")]
    NotConfigured(String),
    #[error("remote backend failed: {0}")]
    Remote(String),
}

/// Runs a circuit from `|0…0⟩` and reports single-qubit tomography for `qubits`.
pub trait Backend<T: Real>: Send + Sync {
    fn tomography(&self, circuit: &Circuit<T>, qubits: &[usize], seed: u64) -> Result<Vec<PauliVector<T>>, BackendError>;

    /// Tomography after `prep` followed by `k` repetitions of `step`, for `k = 1..=steps`.
    ///
    /// The default submits one circuit per `k`, which is what a device has to do.
    fn tomography_series(
        &self,
        prep: &Circuit<T>,
        step: &Circuit<T>,
        steps: usize,
        qubits: &[usize],
        seed: u64,
    ) -> Result<Vec<Vec<PauliVector<T>>>, BackendError> {
        let mut circuit = prep.clone();
        let mut out = Vec::with_capacity(steps);
        for k in 1..=steps {
            circuit.append(step)?;
            out.push(self.tomography(&circuit, qubits, derive_seed(seed, k as u64))?);
        }
        Ok(out)
    }
}

/// Noiseless simulation with exact expectation values.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactBackend;

impl<T: Real> Backend<T> for ExactBackend {
    fn tomography(&self, circuit: &Circuit<T>, qubits: &[usize], _seed: u64) -> Result<Vec<PauliVector<T>>, BackendError> {
        let mut state = StateVector::new(circuit.n_qubits)?;
        state.run(circuit, None)?;
        Ok(qubits.iter().map(|&q| state.bloch_vector(q)).collect::<Result<_, _>>()?)
    }

    fn tomography_series(
        &self,
        prep: &Circuit<T>,
        step: &Circuit<T>,
        steps: usize,
        qubits: &[usize],
        _seed: u64,
    ) -> Result<Vec<Vec<PauliVector<T>>>, BackendError> {
        let mut state = StateVector::new(prep.n_qubits)?;
        state.run(prep, None)?;
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            state.run(step, None)?;
            out.push(qubits.iter().map(|&q| state.bloch_vector(q)).collect::<Result<_, _>>()?);
        }
        Ok(out)
    }
}

/// Noiseless simulation with finite-shot estimates of every Bloch component.
#[derive(Debug, Clone, Copy)]
pub struct SamplingBackend {
    pub shots: u64,
}

impl<T: Real> Backend<T> for SamplingBackend {
    fn tomography(&self, circuit: &Circuit<T>, qubits: &[usize], seed: u64) -> Result<Vec<PauliVector<T>>, BackendError> {
        let mut state = StateVector::new(circuit.n_qubits)?;
        state.run(circuit, None)?;
        qubits
            .iter()
            .enumerate()
            .map(|(i, &q)| Ok(state.sampled_bloch_vector(q, self.shots, derive_seed(seed, i as u64))?))
            .collect()
    }
}

/// Pauli-trajectory noise plus finite-shot sampling.
///
/// The mixed state is approximated by averaging Bloch vectors over
/// `min(shots, max_trajectories)` seeded noise trajectories; shots are then drawn from
/// the averaged (mixed) expectations.
#[derive(Debug, Clone, Copy)]
pub struct NoisyBackend {
    pub shots: u64,
    pub noise: NoiseSpec,
    pub max_trajectories: u64,
}

impl NoisyBackend {
    pub const DEFAULT_MAX_TRAJECTORIES: u64 = 64;

    pub fn new(shots: u64, noise: NoiseSpec) -> Self {
        NoisyBackend {
            shots,
            noise,
            max_trajectories: Self::DEFAULT_MAX_TRAJECTORIES,
        }
    }
}

impl<T: Real> Backend<T> for NoisyBackend {
    fn tomography(&self, circuit: &Circuit<T>, qubits: &[usize], seed: u64) -> Result<Vec<PauliVector<T>>, BackendError> {
        if self.shots == 0 {
            return Err(SimError::ZeroShots.into());
        }
        self.noise.validate()?;
        let trajectories = self.shots.min(self.max_trajectories.max(1));
        let mut sums = vec![[T::zero(); 3]; qubits.len()];
        for t in 0..trajectories {
            let spec = self.noise.with_seed(derive_seed(self.noise.seed ^ seed, t));
            let mut state = StateVector::new(circuit.n_qubits)?;
            state.run(circuit, Some(&spec))?;
            for (sum, &q) in sums.iter_mut().zip(qubits) {
                let b = state.bloch_vector(q)?.as_array();
                for k in 0..3 {
                    sum[k] += b[k];
                }
            }
        }
        let count = T::from_u64(trajectories).unwrap();
        Ok(sums
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mean = PauliVector::new(s[0] / count, s[1] / count, s[2] / count);
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, (1 << 32) + i as u64));
                sample_components(&mean, self.shots, &mut rng)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::Gate;

    fn plus_circuit() -> Circuit<f64> {
        let mut c = Circuit::new(2).unwrap();
        c.push(Gate::ry(0, std::f64::consts::FRAC_PI_2)).unwrap();
        c
    }

    #[test]
    fn exact_series_matches_one_shot_runs() {
        let prep = plus_circuit();
        let mut step = Circuit::new(2).unwrap();
        step.push(Gate::rxx(0, 1, 0.3)).unwrap();
        step.push(Gate::rz(1, 0.2)).unwrap();
        let series = ExactBackend.tomography_series(&prep, &step, 3, &[0, 1], 0).unwrap();
        let mut full = prep.clone();
        for step_result in &series {
            full.append(&step).unwrap();
            let direct = ExactBackend.tomography(&full, &[0, 1], 0).unwrap();
            for (a, b) in direct.iter().zip(step_result) {
                assert!((a.ex - b.ex).abs() < 1e-12 && (a.ez - b.ez).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn noisy_backend_is_seed_deterministic_and_shrinks_vectors() {
        let backend = NoisyBackend::new(
            512,
            NoiseSpec {
                p_depolarize_1q: 0.3,
                p_depolarize_2q: 0.3,
                seed: 5,
            },
        );
        let c = plus_circuit();
        let a: Vec<PauliVector<f64>> = backend.tomography(&c, &[0], 9).unwrap();
        let b: Vec<PauliVector<f64>> = backend.tomography(&c, &[0], 9).unwrap();
        assert_eq!(a, b);
        assert!(a[0].norm() <= 1.0);
    }

    #[test]
    fn sampling_backend_rejects_zero_shots() {
        let r: Result<Vec<PauliVector<f64>>, _> = SamplingBackend { shots: 0 }.tomography(&plus_circuit(), &[0], 0);
        assert!(matches!(r, Err(BackendError::Sim(SimError::ZeroShots))));
    }
}
