//! Stroke manager, HTTP API and batch CLI around the brush pipeline.

pub mod api;
pub mod backend;
pub mod jobs;
pub mod request;
pub mod script;

pub use backend::{BackendKind, BackendSpec};
pub use jobs::{Engine, JobError, JobId, JobInfo, JobStatus};
pub use request::{RequestError, StrokeRequest};
pub use script::{apply_script, ApplyOptions, ScriptError, StrokeScript};
