//! Wire format for stroke submissions and its translation into a core [`BrushRequest`].

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use qbrush_core::brushes::heisenbrush::MAX_STEPS;
use qbrush_core::brushes::smudge::MAX_STROKES;
use qbrush_core::brushes::{
    qubits_for_radius, AquarelaParams, BrushError, CollageParams, HeisenMode, HeisenParams, ParamViolation,
    SmudgeControl, SmudgeParams,
};
use qbrush_core::canvas::{PixelMask, Point, Stroke};
use qbrush_core::color::HslColor;
use qbrush_core::{BrushKind, BrushRequest, BrushSpec};

use crate::backend::BackendSpec;

pub const DEFAULT_CONTINUOUS_STEPS: usize = MAX_STEPS;

/// One stroke as submitted by a client or listed in a script.
///
/// `points` and `radius` describe the main stroke. Brushes that take several strokes
/// (Smudge, discrete Heisenbrush) read the rest from `strokes`, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrokeRequest {
    pub brush_kind: BrushKind,
    pub params: serde_json::Value,
    pub points: Vec<Point>,
    pub radius: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strokes: Vec<Stroke>,
    #[serde(default)]
    pub backend: BackendSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColorDto {
    h: f64,
    s: f64,
    l: f64,
}

impl From<ColorDto> for HslColor<f64> {
    fn from(c: ColorDto) -> Self {
        // no wrapping or clamping: out-of-range values must surface as violations
        HslColor { h: c.h, s: c.s, l: c.l }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AquarelaDto {
    brush_color: ColorDto,
    gamma: f64,
    n_segments: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HeisenDto {
    color: ColorDto,
    gamma: f64,
    #[serde(default)]
    n_qubits: Option<usize>,
    #[serde(default)]
    n_steps: Option<usize>,
    #[serde(default)]
    dt: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SmudgeDto {
    gamma: f64,
    #[serde(default)]
    control: u8,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OriginDto {
    x: i64,
    y: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CollageDto {
    s0: f64,
    paste_origin: OriginDto,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RequestError {
    /// Malformed JSON, wrong types or unknown fields.
    #[error("{field}: {message}")]
    Schema { field: String, message: String },
    /// Well-formed but out of range.
    #[error("invalid request: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ParamViolation>),
}

impl RequestError {
    pub fn field(&self) -> Option<&str> {
        match self {
            RequestError::Schema { field, .. } => Some(field),
            RequestError::Invalid(v) => v.first().map(|v| v.field.as_str()),
        }
    }
}

/// Deserializes with the failing path in the error, e.g. `strokes[2].params.gamma`.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, RequestError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| schema_error("", e))
}

fn parse_value<T: DeserializeOwned>(prefix: &str, value: &serde_json::Value) -> Result<T, RequestError> {
    serde_path_to_error::deserialize(value).map_err(|e| schema_error(prefix, e))
}

fn schema_error(prefix: &str, e: serde_path_to_error::Error<serde_json::Error>) -> RequestError {
    let path = e.path().to_string();
    let field = match (prefix.is_empty(), path.as_str()) {
        (true, p) => p.to_owned(),
        (false, ".") => prefix.to_owned(),
        (false, p) => format!("{prefix}.{p}"),
    };
    RequestError::Schema { field, message: e.into_inner().to_string() }
}

fn absorb(out: &mut Vec<ParamViolation>, r: Result<(), BrushError>) {
    if let Err(BrushError::InvalidParams(v)) = r {
        out.extend(v);
    }
}

fn stroke_count(out: &mut Vec<ParamViolation>, kind: BrushKind, n: usize, max: usize) {
    if n > max {
        out.push(ParamViolation::new("strokes", format!("{kind} takes at most {max} strokes, got {n}")));
    }
}

impl StrokeRequest {
    /// All strokes in submission order.
    pub fn all_strokes(&self) -> Vec<Stroke> {
        let mut v = vec![Stroke { points: self.points.clone(), radius: self.radius }];
        v.extend(self.strokes.iter().cloned());
        v
    }

    /// Parses `params` for the brush kind and checks every range, reporting all
    /// violations at once.
    pub fn resolve(&self) -> Result<BrushRequest, RequestError> {
        let strokes = self.all_strokes();
        let mut v = Vec::new();
        for (i, s) in strokes.iter().enumerate() {
            if let Err(e) = s.validate() {
                let field = if i == 0 { "points".to_owned() } else { format!("strokes[{}]", i - 1) };
                v.push(ParamViolation::new(field, e.to_string()));
            }
        }
        v.extend(self.backend.violations());

        let kind = self.brush_kind;
        let n = strokes.len();
        let brush = match kind {
            BrushKind::Aquarela => {
                let d: AquarelaDto = parse_value("params", &self.params)?;
                let p = AquarelaParams { brush_color: d.brush_color.into(), gamma: d.gamma, n_segments: d.n_segments };
                absorb(&mut v, p.validate());
                stroke_count(&mut v, kind, n, 1);
                BrushSpec::Aquarela(p)
            }
            BrushKind::HeisenContinuous | BrushKind::HeisenDiscrete => {
                let d: HeisenDto = parse_value("params", &self.params)?;
                let mode = if kind == BrushKind::HeisenContinuous { HeisenMode::Continuous } else { HeisenMode::Discrete };
                let steps = match mode {
                    HeisenMode::Continuous => {
                        stroke_count(&mut v, kind, n, 1);
                        d.n_steps.unwrap_or(DEFAULT_CONTINUOUS_STEPS)
                    }
                    HeisenMode::Discrete => {
                        stroke_count(&mut v, kind, n, MAX_STEPS);
                        if d.n_steps.is_some_and(|k| k != n) {
                            v.push(ParamViolation::new("n_steps", format!("discrete mode runs one step per stroke ({n})")));
                        }
                        n
                    }
                };
                let qubits = d.n_qubits.unwrap_or_else(|| qubits_for_radius(self.radius));
                let mut p = HeisenParams::new(mode, d.color.into(), d.gamma, qubits, steps);
                if let Some(dt) = d.dt {
                    p.dt = dt;
                }
                absorb(&mut v, p.validate());
                BrushSpec::Heisenbrush(p)
            }
            BrushKind::Smudge => {
                let d: SmudgeDto = parse_value("params", &self.params)?;
                let control = SmudgeControl::from_bit(d.control).unwrap_or_else(|| {
                    v.push(ParamViolation::new("control", format!("{} is not 0 or 1", d.control)));
                    SmudgeControl::Damp
                });
                let p = SmudgeParams { control, gamma: d.gamma };
                absorb(&mut v, p.validate());
                stroke_count(&mut v, kind, n, MAX_STROKES);
                BrushSpec::Smudge(p)
            }
            BrushKind::Collage => {
                let d: CollageDto = parse_value("params", &self.params)?;
                let probe = CollageParams {
                    s0: d.s0,
                    copy_region: PixelMask::empty(),
                    paste_origin: (d.paste_origin.x, d.paste_origin.y),
                };
                absorb(&mut v, probe.validate());
                stroke_count(&mut v, kind, n, 1);
                BrushSpec::Collage { s0: d.s0, paste_origin: probe.paste_origin }
            }
        };
        if v.is_empty() {
            Ok(BrushRequest { brush, strokes })
        } else {
            Err(RequestError::Invalid(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn req(kind: &str, params: serde_json::Value) -> StrokeRequest {
        serde_json::from_value(json!({
            "brush_kind": kind,
            "params": params,
            "points": [{"x": 1.0, "y": 2.0}, {"x": 20.0, "y": 2.0}],
            "radius": 10.0,
        }))
        .unwrap()
    }

    fn fields(e: RequestError) -> Vec<String> {
        match e {
            RequestError::Invalid(v) => v.into_iter().map(|v| v.field).collect(),
            other => panic!("expected violations, got {other:?}"),
        }
    }

    #[test]
    fn aquarela_resolves() {
        let r = req("aquarela", json!({"brush_color": {"h": 0.2, "s": 1.0, "l": 0.5}, "gamma": 0.5, "n_segments": 4}))
            .resolve()
            .unwrap();
        assert_eq!(r.brush.kind(), BrushKind::Aquarela);
        assert_eq!(r.strokes.len(), 1);
    }

    #[test]
    fn gamma_out_of_range_is_named() {
        let e = req("aquarela", json!({"brush_color": {"h": 0.2, "s": 1.0, "l": 0.5}, "gamma": 1.5, "n_segments": 40}))
            .resolve()
            .unwrap_err();
        assert_eq!(fields(e), ["gamma", "n_segments"]);
    }

    #[test]
    fn unknown_param_is_a_schema_error() {
        let e = req("smudge", json!({"gamma": 1.0, "strength": 2})).resolve().unwrap_err();
        assert!(matches!(&e, RequestError::Schema { field, .. } if field == "params.strength"), "{e:?}");
        let e = req("smudge", json!({"gamma": "big"})).resolve().unwrap_err();
        assert_eq!(e.field(), Some("params.gamma"));
    }

    #[test]
    fn heisen_defaults_follow_radius() {
        let r = req("heisen_continuous", json!({"color": {"h": 0.1, "s": 0.5, "l": 0.5}, "gamma": 1.0}))
            .resolve()
            .unwrap();
        let BrushSpec::Heisenbrush(p) = r.brush else { panic!() };
        assert_eq!((p.n_qubits, p.n_steps), (2, DEFAULT_CONTINUOUS_STEPS));
    }

    #[test]
    fn discrete_steps_follow_stroke_count() {
        let mut r = req("heisen_discrete", json!({"color": {"h": 0.1, "s": 0.5, "l": 0.5}, "gamma": 1.0}));
        r.strokes = vec![Stroke { points: vec![Point::new(3.0, 3.0)], radius: 2.0 }; 2];
        let BrushSpec::Heisenbrush(p) = r.resolve().unwrap().brush else { panic!() };
        assert_eq!(p.n_steps, 3);
        r.params = json!({"color": {"h": 0.1, "s": 0.5, "l": 0.5}, "gamma": 1.0, "n_steps": 5});
        assert_eq!(fields(r.resolve().unwrap_err()), ["n_steps"]);
    }

    #[test]
    fn smudge_control_and_stroke_checks() {
        let mut r = req("smudge", json!({"gamma": 4.0, "control": 2}));
        r.radius = 0.0;
        assert_eq!(fields(r.resolve().unwrap_err()), ["points", "control", "gamma"]);
    }

    #[test]
    fn collage_rejects_extra_strokes_and_bad_s0() {
        let mut r = req("collage", json!({"s0": 0.0, "paste_origin": {"x": 5, "y": 6}}));
        r.strokes = vec![Stroke { points: vec![Point::new(3.0, 3.0)], radius: 2.0 }];
        assert_eq!(fields(r.resolve().unwrap_err()), ["s0", "strokes"]);
    }

    #[test]
    fn top_level_paths_are_reported() {
        let e = parse_json::<StrokeRequest>(r#"{"brush_kind":"smudge","params":{},"points":[{"x":1}],"radius":2}"#)
            .unwrap_err();
        assert_eq!(e.field(), Some("points[0]"));
    }
}
