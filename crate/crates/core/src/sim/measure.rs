use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::state::StateVector;
use super::SimError;
use crate::scalar::Real;

/// Single-qubit Pauli expectation triple `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PauliVector<T> {
    pub ex: T,
    pub ey: T,
    pub ez: T,
}

impl<T: Real> PauliVector<T> {
    pub fn new(ex: T, ey: T, ez: T) -> Self {
        PauliVector { ex, ey, ez }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn norm(&self) -> T {
        (self.ex * self.ex + self.ey * self.ey + self.ez * self.ez).sqrt()
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.ex, self.ey, self.ez]
    }

    /// Rescales onto the unit sphere when the vector lies outside the ball.
    pub fn clamped_to_unit_ball(self) -> Self {
        let n = self.norm();
        if n > T::one() {
            Self::new(self.ex / n, self.ey / n, self.ez / n)
        } else {
            self
        }
    }
}

impl<T: Real> StateVector<T> {
    /// Exact Bloch vector of `qubit`, from its reduced density matrix.
    pub fn bloch_vector(&self, qubit: usize) -> Result<PauliVector<T>, SimError> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let zero = T::zero();
        let mut p0 = zero;
        let mut p1 = zero;
        // ρ₀₁ = Σ_k a_{k,0} · conj(a_{k,1})
        let mut rho01 = Complex::new(zero, zero);
        let amps = self.amplitudes();
        for i in 0..amps.len() {
            if i & bit != 0 {
                continue;
            }
            let a0 = amps[i];
            let a1 = amps[i | bit];
            p0 += a0.norm_sqr();
            p1 += a1.norm_sqr();
            rho01 += a0 * a1.conj();
        }
        let two = T::lit(2.0);
        Ok(PauliVector::new(two * rho01.re, -two * rho01.im, p0 - p1))
    }

    /// Shot-sampled Bloch vector: each component is estimated from `shots` simulated
    /// measurements in its basis, drawn from a stream seeded by `seed`.
    pub fn sampled_bloch_vector(&self, qubit: usize, shots: u64, seed: u64) -> Result<PauliVector<T>, SimError> {
        if shots == 0 {
            return Err(SimError::ZeroShots);
        }
        let exact = self.bloch_vector(qubit)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(sample_components(&exact, shots, &mut rng))
    }

    /// Mean single-qubit `⟨Z⟩` over the register.
    pub fn magnetization(&self) -> T {
        let n = self.n_qubits();
        let weighted = self
            .amplitudes()
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, a)| {
                let ones = i.count_ones() as usize;
                let z = T::from_usize(n).unwrap() - T::lit(2.0) * T::from_usize(ones).unwrap();
                acc + a.norm_sqr() * z
            });
        weighted / T::from_usize(n).unwrap()
    }

    fn check_qubit(&self, qubit: usize) -> Result<(), SimError> {
        if qubit >= self.n_qubits() {
            return Err(SimError::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits(),
            });
        }
        Ok(())
    }
}

/// Binomial shot sampling of a (possibly mixed) Bloch vector; result clamped to the unit ball.
pub(crate) fn sample_components<T: Real>(exact: &PauliVector<T>, shots: u64, rng: &mut ChaCha8Rng) -> PauliVector<T> {
    let mut est = [T::zero(); 3];
    for (slot, e) in est.iter_mut().zip(exact.as_array()) {
        let p_plus = ((1.0 + e.to_f64_lossy()) / 2.0).clamp(0.0, 1.0);
        let hits = Binomial::new(shots, p_plus)
            .expect("probability clamped to [0, 1]")
            .sample(rng);
        *slot = T::lit(2.0 * hits as f64 / shots as f64 - 1.0);
    }
    PauliVector::new(est[0], est[1], est[2]).clamped_to_unit_ball()
}
