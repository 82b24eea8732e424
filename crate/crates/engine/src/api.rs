//! HTTP API over the [`Engine`].

use std::path::PathBuf;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use qbrush_core::brushes::heisenbrush::{DEFAULT_DT, MAX_CHAIN, MAX_STEPS};
use qbrush_core::brushes::{aquarela::MAX_SEGMENTS, smudge::MAX_STROKES};
use qbrush_core::canvas::CanvasImage;

use crate::jobs::{Engine, JobError, JobId, JobInfo};
use crate::request::{parse_json, RequestError, StrokeRequest, DEFAULT_CONTINUOUS_STEPS};

pub const BODY_LIMIT: usize = 64 << 20;

#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    status: StatusCode,
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, code, message: message.into(), field: None }
    }

    fn internal(e: impl std::fmt::Display) -> Self {
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

impl From<JobError> for ApiError {
    fn from(e: JobError) -> Self {
        let (status, code) = match e {
            JobError::NotFound(_) => (StatusCode::NOT_FOUND, "not_found"),
            JobError::NoCanvas => (StatusCode::CONFLICT, "no_canvas"),
            JobError::State { .. } => (StatusCode::CONFLICT, "invalid_state"),
            JobError::Paste(_) => (StatusCode::CONFLICT, "paste_failed"),
            JobError::Timeout(_) => (StatusCode::GATEWAY_TIMEOUT, "timeout"),
        };
        ApiError::new(status, code, e.to_string())
    }
}

impl From<RequestError> for ApiError {
    fn from(e: RequestError) -> Self {
        let (status, code) = match e {
            RequestError::Schema { .. } => (StatusCode::BAD_REQUEST, "invalid_request"),
            RequestError::Invalid(_) => (StatusCode::UNPROCESSABLE_ENTITY, "validation_error"),
        };
        ApiError { status, code, field: e.field().map(str::to_owned), message: e.to_string() }
    }
}

type ApiResult<T> = Result<T, ApiError>;

pub fn router(engine: Engine, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/brushes", get(brushes))
        .route("/api/canvas", get(get_canvas).post(put_canvas))
        .route("/api/strokes", post(submit))
        .route("/api/jobs", get(list_jobs))
        .route("/api/jobs/{id}", get(get_job).delete(delete_job))
        .route("/api/jobs/{id}/preview", get(job_preview))
        .route("/api/jobs/{id}/run", post(run_job))
        .route("/api/jobs/{id}/paste", post(paste_job))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .with_state(engine);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

fn png(bytes: Vec<u8>) -> Response {
    ([(header::CONTENT_TYPE, "image/png")], bytes).into_response()
}

async fn encode(image: CanvasImage) -> ApiResult<Response> {
    let bytes = tokio::task::spawn_blocking(move || image.save_png())
        .await
        .map_err(ApiError::internal)?
        .map_err(ApiError::internal)?;
    Ok(png(bytes))
}

async fn brushes() -> Json<Value> {
    Json(brush_descriptor())
}

/// Parameter schema for every brush kind, for building control panels.
pub fn brush_descriptor() -> Value {
    let color = |name: &str| json!({"name": name, "type": "hsl", "min": 0.0, "max": 1.0, "required": true});
    let heisen = |kind: &str, min_strokes: usize, max_strokes: usize, steps: Value| {
        json!({
            "kind": kind,
            "strokes": {"min": min_strokes, "max": max_strokes},
            "params": [
                color("color"),
                {"name": "gamma", "type": "number", "min": 0.0, "max": 1.0, "required": true},
                {"name": "n_qubits", "type": "integer", "min": 1, "max": MAX_CHAIN, "required": false,
                 "default": "round(radius / 5) clamped to [1, 10]"},
                steps,
                {"name": "dt", "type": "number", "min": 0.0, "required": false, "default": DEFAULT_DT},
            ],
        })
    };
    json!({
        "brushes": [
            {
                "kind": "aquarela",
                "strokes": {"min": 1, "max": 1},
                "params": [
                    color("brush_color"),
                    {"name": "gamma", "type": "number", "min": 0.0, "max": 1.0, "required": true},
                    {"name": "n_segments", "type": "integer", "min": 1, "max": MAX_SEGMENTS, "required": true},
                ],
            },
            heisen("heisen_continuous", 1, 1, json!({"name": "n_steps", "type": "integer", "min": 1,
                "max": MAX_STEPS, "required": false, "default": DEFAULT_CONTINUOUS_STEPS})),
            heisen("heisen_discrete", 1, MAX_STEPS, json!({"name": "n_steps", "type": "integer", "min": 1,
                "max": MAX_STEPS, "required": false, "default": "number of strokes"})),
            {
                "kind": "smudge",
                "strokes": {"min": 1, "max": MAX_STROKES},
                "params": [
                    {"name": "gamma", "type": "number", "min": 0.0, "max": std::f64::consts::PI, "required": true},
                    {"name": "control", "type": "integer", "min": 0, "max": 1, "required": false, "default": 0},
                ],
            },
            {
                "kind": "collage",
                "strokes": {"min": 1, "max": 1},
                "params": [
                    {"name": "s0", "type": "number", "min": 0.0, "max": 1.0, "exclusive_min": true, "required": true},
                    {"name": "paste_origin", "type": "point", "required": true},
                ],
            },
        ]
    })
}

async fn get_canvas(State(engine): State<Engine>) -> ApiResult<Response> {
    let image = engine.canvas().ok_or(JobError::NoCanvas)?;
    encode((*image).clone()).await
}

async fn put_canvas(State(engine): State<Engine>, body: Bytes) -> ApiResult<Json<Value>> {
    let image = tokio::task::spawn_blocking(move || CanvasImage::load_png(&body))
        .await
        .map_err(ApiError::internal)?
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "invalid_image", e.to_string()))?;
    let (width, height) = image.dims();
    let version = engine.set_canvas(image);
    Ok(Json(json!({"canvas_version": version, "width": width, "height": height})))
}

async fn submit(State(engine): State<Engine>, body: Bytes) -> ApiResult<(StatusCode, Json<JobInfo>)> {
    let text = std::str::from_utf8(&body)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "invalid_request", e.to_string()))?;
    let req: StrokeRequest = parse_json(text)?;
    let brush = req.resolve()?;
    let id = engine.submit(brush, req.backend.clone(), req.seed)?;
    Ok((StatusCode::CREATED, Json(engine.info(id)?)))
}

async fn list_jobs(State(engine): State<Engine>) -> Json<Vec<JobInfo>> {
    Json(engine.list())
}

async fn get_job(State(engine): State<Engine>, Path(id): Path<JobId>) -> ApiResult<Json<JobInfo>> {
    Ok(Json(engine.info(id)?))
}

async fn delete_job(State(engine): State<Engine>, Path(id): Path<JobId>) -> ApiResult<StatusCode> {
    engine.delete(id)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn job_preview(State(engine): State<Engine>, Path(id): Path<JobId>) -> ApiResult<Response> {
    let image = tokio::task::spawn_blocking(move || engine.preview(id)).await.map_err(ApiError::internal)??;
    encode(image).await
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunBody {
    #[serde(default)]
    seed: Option<u64>,
}

async fn run_job(State(engine): State<Engine>, Path(id): Path<JobId>, body: Bytes) -> ApiResult<Json<JobInfo>> {
    let run: RunBody = if body.iter().all(u8::is_ascii_whitespace) {
        RunBody::default()
    } else {
        let text = std::str::from_utf8(&body)
            .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "invalid_request", e.to_string()))?;
        parse_json(text)?
    };
    Ok(Json(engine.rerun(id, run.seed)?))
}

async fn paste_job(State(engine): State<Engine>, Path(id): Path<JobId>) -> ApiResult<Json<JobInfo>> {
    Ok(Json(engine.paste(id)?))
}
