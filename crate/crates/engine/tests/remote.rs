//! The remote backend seam against a local stand-in service.

use axum::routing::post;
use axum::{Json, Router};
use qbrush::backend::{BackendKind, BackendSpec, REMOTE_ENDPOINT_VAR};
use qbrush_core::backend::{Backend, BackendError, ExactBackend};
use qbrush_core::sim::{Circuit, Gate};
use serde_json::{json, Value};

async fn tomography(Json(body): Json<Value>) -> Json<Value> {
    let circuit: Circuit<f64> = serde_json::from_value(body["circuit"].clone()).unwrap();
    let qubits: Vec<usize> = serde_json::from_value(body["qubits"].clone()).unwrap();
    let bloch = ExactBackend.tomography(&circuit, &qubits, 0).unwrap();
    Json(json!({"bloch": bloch}))
}

fn spawn_service() -> String {
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let rt = tokio::runtime::Runtime::new().unwrap();
        rt.block_on(async move {
            let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
            tx.send(listener.local_addr().unwrap()).unwrap();
            axum::serve(listener, Router::new().route("/tomography", post(tomography))).await.unwrap();
        });
    });
    format!("http://{}", rx.recv().unwrap())
}

#[test]
fn remote_stub_needs_endpoint_then_forwards() {
    let spec = BackendSpec::of(BackendKind::RemoteStub);
    let mut c = Circuit::new(2).unwrap();
    c.push(Gate::ry(0, 0.7)).unwrap();
    c.push(Gate::cnot(0, 1)).unwrap();

    std::env::remove_var(REMOTE_ENDPOINT_VAR);
    assert!(matches!(spec.build().tomography(&c, &[0, 1], 0), Err(BackendError::NotConfigured(_))));

    std::env::set_var(REMOTE_ENDPOINT_VAR, spawn_service());
    let got = spec.build().tomography(&c, &[0, 1], 0).unwrap();
    assert_eq!(got, ExactBackend.tomography(&c, &[0, 1], 0).unwrap());

    std::env::set_var(REMOTE_ENDPOINT_VAR, "http://127.0.0.1:9");
    assert!(matches!(spec.build().tomography(&c, &[0], 0), Err(BackendError::Remote(_))));
}
