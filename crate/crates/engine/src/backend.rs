//! Backend selection from the wire-level description.

use serde::{Deserialize, Serialize};

use qbrush_core::backend::{Backend, BackendError, ExactBackend, NoisyBackend, SamplingBackend};
use qbrush_core::brushes::ParamViolation;
use qbrush_core::sim::{Circuit, NoiseSpec, PauliVector};

pub const DEFAULT_SHOTS: u64 = 1024;
pub const REMOTE_ENDPOINT_VAR: &str = "QBRUSH_REMOTE_ENDPOINT";

pub const DEFAULT_NOISE: NoiseSpec = NoiseSpec {
    p_depolarize_1q: 1e-3,
    p_depolarize_2q: 1e-2,
    seed: 0,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    Exact,
    Sampling,
    Noisy,
    RemoteStub,
}

impl std::str::FromStr for BackendKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_owned())).map_err(|_| format!("unknown backend `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackendSpec {
    pub kind: BackendKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSpec>,
}

impl Default for BackendSpec {
    fn default() -> Self {
        BackendSpec::of(BackendKind::Exact)
    }
}

impl BackendSpec {
    pub fn of(kind: BackendKind) -> Self {
        BackendSpec { kind, shots: None, noise: None }
    }

    pub fn shots(&self) -> u64 {
        self.shots.unwrap_or(DEFAULT_SHOTS)
    }

    pub fn violations(&self) -> Vec<ParamViolation> {
        let mut v = Vec::new();
        if self.shots == Some(0) {
            v.push(ParamViolation::new("backend.shots", "must be at least 1"));
        }
        if let Some(n) = &self.noise {
            if n.validate().is_err() {
                v.push(ParamViolation::new("backend.noise", "probabilities must lie in [0, 1]"));
            }
            if self.kind != BackendKind::Noisy {
                v.push(ParamViolation::new("backend.noise", "only the noisy backend takes a noise model"));
            }
        }
        v
    }

    /// Instantiates the backend. `remote_stub` reads its endpoint from the environment.
    pub fn build(&self) -> Box<dyn Backend<f64>> {
        match self.kind {
            BackendKind::Exact => Box::new(ExactBackend),
            BackendKind::Sampling => Box::new(SamplingBackend { shots: self.shots() }),
            BackendKind::Noisy => Box::new(NoisyBackend::new(self.shots(), self.noise.unwrap_or(DEFAULT_NOISE))),
            BackendKind::RemoteStub => Box::new(RemoteBackend {
                endpoint: std::env::var(REMOTE_ENDPOINT_VAR).ok().filter(|s| !s.is_empty()),
                shots: self.shots(),
            }),
        }
    }
}

/// Forwards circuits to an external HTTP service.
///
/// The service receives `POST {endpoint}/tomography` with
/// `{circuit, qubits, seed, shots}` and answers `{bloch: [{x, y, z}, ...]}`.
#[derive(Debug, Clone)]
pub struct RemoteBackend {
    pub endpoint: Option<String>,
    pub shots: u64,
}

#[derive(Serialize)]
struct RemoteRequest<'a> {
    circuit: &'a Circuit<f64>,
    qubits: &'a [usize],
    seed: u64,
    shots: u64,
}

#[derive(Deserialize)]
struct RemoteResponse {
    bloch: Vec<PauliVector<f64>>,
}

impl Backend<f64> for RemoteBackend {
    fn tomography(&self, circuit: &Circuit<f64>, qubits: &[usize], seed: u64) -> Result<Vec<PauliVector<f64>>, BackendError> {
        let Some(endpoint) = &self.endpoint else {
            return Err(BackendError::NotConfigured(format!("set {REMOTE_ENDPOINT_VAR} to use remote_stub")));
        };
        let url = format!("{}/tomography", endpoint.trim_end_matches('/'));
        let body = RemoteRequest { circuit, qubits, seed, shots: self.shots };
        let resp: RemoteResponse = reqwest::blocking::Client::new()
            .post(&url)
            .json(&body)
            .send()
            .and_then(|r| r.error_for_status())
            .and_then(|r| r.json())
            .map_err(|e| BackendError::Remote(e.to_string()))?;
        if resp.bloch.len() != qubits.len() {
            return Err(BackendError::Remote(format!(
                "expected {} Bloch vectors, got {}",
                qubits.len(),
                resp.bloch.len()
            )));
        }
        Ok(resp.bloch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_wire_form() {
        let s: BackendSpec = serde_json::from_str(r#"{"kind":"sampling","shots":64}"#).unwrap();
        assert_eq!(s.kind, BackendKind::Sampling);
        assert_eq!(s.shots(), 64);
        assert_eq!(BackendSpec::of(BackendKind::Noisy).shots(), DEFAULT_SHOTS);
        assert!(serde_json::from_str::<BackendSpec>(r#"{"kind":"exact","foo":1}"#).is_err());
        assert_eq!("remote_stub".parse::<BackendKind>(), Ok(BackendKind::RemoteStub));
        assert!("qpu".parse::<BackendKind>().is_err());
    }

    #[test]
    fn violations_name_fields() {
        let s = BackendSpec { kind: BackendKind::Sampling, shots: Some(0), noise: Some(DEFAULT_NOISE) };
        let fields: Vec<String> = s.violations().into_iter().map(|v| v.field).collect();
        assert_eq!(fields, ["backend.shots", "backend.noise"]);
    }

    #[test]
    fn unconfigured_remote_is_rejected() {
        let b = RemoteBackend { endpoint: None, shots: 10 };
        let c = Circuit::new(1).unwrap();
        assert!(matches!(b.tomography(&c, &[0], 0), Err(BackendError::NotConfigured(_))));
    }
}
