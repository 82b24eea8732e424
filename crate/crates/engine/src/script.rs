//! Batch replay of a stroke session.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use qbrush_core::brushes::BrushError;
use qbrush_core::canvas::{paste, CanvasError, CanvasImage};
use qbrush_core::render;

use crate::backend::BackendKind;
use crate::request::{RequestError, StrokeRequest};

pub const SCRIPT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrokeScript {
    pub version: u32,
    pub strokes: Vec<StrokeRequest>,
}

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("schema error at line {line}, column {column}: {field}: {message}")]
    Schema { line: usize, column: usize, field: String, message: String },
    #[error("entry {index}: {source}")]
    Invalid { index: usize, source: RequestError },
    #[error("entry {index}: {source}")]
    Brush { index: usize, source: BrushError },
    #[error(transparent)]
    Canvas(#[from] CanvasError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ScriptError {
    /// 2 for schema problems, 3 for out-of-range parameters, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            ScriptError::Schema { .. } => 2,
            ScriptError::Invalid { source: RequestError::Schema { .. }, .. } => 2,
            ScriptError::Invalid { .. } => 3,
            ScriptError::Brush { source: e, .. } if is_validation(e) => 3,
            _ => 1,
        }
    }
}

fn is_validation(e: &BrushError) -> bool {
    matches!(
        e,
        BrushError::InvalidParams(_) | BrushError::InputCount { .. } | BrushError::CloningConstraint { .. }
    )
}

impl StrokeScript {
    pub fn parse(text: &str) -> Result<Self, ScriptError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let script: StrokeScript = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            ScriptError::Schema { line: inner.line(), column: inner.column(), field, message: inner.to_string() }
        })?;
        if script.version != SCRIPT_VERSION {
            return Err(ScriptError::Schema {
                line: 0,
                column: 0,
                field: "version".into(),
                message: format!("unsupported version {}, expected {SCRIPT_VERSION}", script.version),
            });
        }
        Ok(script)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("script serializes")
    }
}

/// Command-line overrides for a replay.
#[derive(Debug, Clone, Copy, Default)]
pub struct ApplyOptions {
    /// Entry `i` runs with `seed + i`.
    pub seed: Option<u64>,
    /// Replaces each entry's backend kind; shots are kept, noise only for the noisy kind.
    pub backend: Option<BackendKind>,
}

/// Seed for entry `index`: the override plus the index, else the entry's own seed,
/// else the index.
pub fn entry_seed(entry: &StrokeRequest, index: usize, opts: &ApplyOptions) -> u64 {
    match opts.seed {
        Some(s) => s.wrapping_add(index as u64),
        None => entry.seed.unwrap_or(index as u64),
    }
}

/// Runs every entry in order against the evolving canvas, pasting each result.
pub fn apply_script(image: &mut CanvasImage, script: &StrokeScript, opts: &ApplyOptions) -> Result<(), ScriptError> {
    let resolved = script
        .strokes
        .iter()
        .enumerate()
        .map(|(index, entry)| entry.resolve().map_err(|source| ScriptError::Invalid { index, source }))
        .collect::<Result<Vec<_>, _>>()?;
    for (index, (entry, request)) in script.strokes.iter().zip(&resolved).enumerate() {
        let mut spec = entry.backend.clone();
        if let Some(kind) = opts.backend {
            spec.kind = kind;
            if kind != BackendKind::Noisy {
                spec.noise = None;
            }
        }
        let backend = spec.build();
        let diff = render(image, request, backend.as_ref(), entry_seed(entry, index, opts))
            .map_err(|source| ScriptError::Brush { index, source })?;
        paste(image, &diff)?;
    }
    Ok(())
}
