//! One entry point from (snapshot, brush, strokes, backend, seed) to a pixel diff.

use serde::{Deserialize, Serialize};

use crate::backend::Backend;
use crate::brushes::{
    run_aquarela, run_collage, run_heisenbrush, run_smudge, AquarelaParams, BrushEffect, BrushError, CollageParams,
    HeisenParams, SmudgeParams,
};
use crate::canvas::{apply_updates, fill_polygon, CanvasImage, PixelDiff, Stroke};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BrushKind {
    Aquarela,
    HeisenContinuous,
    HeisenDiscrete,
    Smudge,
    Collage,
}

impl BrushKind {
    pub const ALL: [BrushKind; 5] = [
        BrushKind::Aquarela,
        BrushKind::HeisenContinuous,
        BrushKind::HeisenDiscrete,
        BrushKind::Smudge,
        BrushKind::Collage,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BrushKind::Aquarela => "aquarela",
            BrushKind::HeisenContinuous => "heisen_continuous",
            BrushKind::HeisenDiscrete => "heisen_discrete",
            BrushKind::Smudge => "smudge",
            BrushKind::Collage => "collage",
        }
    }
}

impl std::fmt::Display for BrushKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fully resolved brush parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum BrushSpec {
    Aquarela(AquarelaParams<f64>),
    Heisenbrush(HeisenParams<f64>),
    Smudge(SmudgeParams<f64>),
    /// The copy region is the polygon traced by the first stroke.
    Collage { s0: f64, paste_origin: (i64, i64) },
}

impl BrushSpec {
    pub fn kind(&self) -> BrushKind {
        match self {
            BrushSpec::Aquarela(_) => BrushKind::Aquarela,
            BrushSpec::Heisenbrush(p) => match p.mode {
                crate::brushes::HeisenMode::Continuous => BrushKind::HeisenContinuous,
                crate::brushes::HeisenMode::Discrete => BrushKind::HeisenDiscrete,
            },
            BrushSpec::Smudge(_) => BrushKind::Smudge,
            BrushSpec::Collage { .. } => BrushKind::Collage,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BrushRequest {
    pub brush: BrushSpec,
    pub strokes: Vec<Stroke>,
}

fn single(kind: BrushKind, strokes: &[Stroke]) -> Result<&Stroke, BrushError> {
    match strokes {
        [s] => Ok(s),
        _ => Err(BrushError::InputCount {
            brush: kind.as_str(),
            got: strokes.len(),
            max: 1,
        }),
    }
}

pub fn render_effect(
    image: &CanvasImage,
    request: &BrushRequest,
    backend: &dyn Backend<f64>,
    seed: u64,
) -> Result<BrushEffect, BrushError> {
    for s in &request.strokes {
        s.validate()?;
    }
    let kind = request.brush.kind();
    match &request.brush {
        BrushSpec::Aquarela(p) => run_aquarela(image, single(kind, &request.strokes)?, p, backend, seed),
        BrushSpec::Heisenbrush(p) => run_heisenbrush(image, &request.strokes, p, backend, seed),
        BrushSpec::Smudge(p) => run_smudge(image, &request.strokes, p, backend, seed),
        BrushSpec::Collage { s0, paste_origin } => {
            let lasso = single(kind, &request.strokes)?;
            let params = CollageParams {
                s0: *s0,
                copy_region: fill_polygon(lasso, image.width(), image.height())?,
                paste_origin: *paste_origin,
            };
            run_collage(image, &params, backend, seed)
        }
    }
}

/// Runs the brush and diffs its effect against the snapshot.
pub fn render(
    image: &CanvasImage,
    request: &BrushRequest,
    backend: &dyn Backend<f64>,
    seed: u64,
) -> Result<PixelDiff, BrushError> {
    render_effect(image, request, backend, seed).map(|e| apply_updates(image, &e))
}
