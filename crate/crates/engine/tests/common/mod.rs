#![allow(dead_code)]

use qbrush_core::canvas::CanvasImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub fn noise_canvas(width: u32, height: u32, seed: u64) -> CanvasImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut px = vec![0u8; (width * height * 4) as usize];
    for p in px.chunks_exact_mut(4) {
        p[..3].copy_from_slice(&[rng.random(), rng.random(), rng.random()]);
        p[3] = 255;
    }
    CanvasImage::new(width, height, px).unwrap()
}

pub fn line(x0: f64, y0: f64, x1: f64, y1: f64) -> Value {
    json!([{"x": x0, "y": y0}, {"x": x1, "y": y1}])
}

pub fn aquarela(gamma: f64, points: Value, radius: f64) -> Value {
    json!({
        "brush_kind": "aquarela",
        "params": {"brush_color": {"h": 0.6, "s": 0.9, "l": 0.45}, "gamma": gamma, "n_segments": 3},
        "points": points,
        "radius": radius,
    })
}

pub fn smudge(gamma: f64, control: u8, points: Value, radius: f64) -> Value {
    json!({
        "brush_kind": "smudge",
        "params": {"gamma": gamma, "control": control},
        "points": points,
        "radius": radius,
    })
}

/// A varied ten-entry session on a 256×256 canvas.
pub fn ten_entry_script() -> Value {
    let strokes = vec![
        aquarela(0.8, line(20.0, 20.0, 200.0, 40.0), 6.0),
        smudge(1.2, 0, line(30.0, 80.0, 220.0, 90.0), 5.0),
        json!({
            "brush_kind": "heisen_continuous",
            "params": {"color": {"h": 0.1, "s": 0.8, "l": 0.5}, "gamma": 0.7, "n_steps": 6},
            "points": line(40.0, 120.0, 230.0, 140.0), "radius": 20.0,
        }),
        json!({
            "brush_kind": "heisen_discrete",
            "params": {"color": {"h": 0.8, "s": 0.6, "l": 0.4}, "gamma": 1.0},
            "points": line(10.0, 200.0, 60.0, 200.0), "radius": 10.0,
            "strokes": [
                {"points": line(70.0, 200.0, 120.0, 200.0), "radius": 10.0},
                {"points": line(130.0, 200.0, 180.0, 200.0), "radius": 10.0},
            ],
        }),
        json!({
            "brush_kind": "smudge",
            "params": {"gamma": 2.0, "control": 1},
            "points": line(10.0, 10.0, 10.0, 240.0), "radius": 4.0,
            "strokes": [{"points": line(240.0, 10.0, 240.0, 240.0), "radius": 4.0}],
            "backend": {"kind": "sampling", "shots": 256},
        }),
        json!({
            "brush_kind": "collage",
            "params": {"s0": 0.6, "paste_origin": {"x": 150, "y": 150}},
            "points": [{"x": 20, "y": 140}, {"x": 80, "y": 140}, {"x": 80, "y": 190}, {"x": 20, "y": 190}],
            "radius": 1.0,
        }),
        json!({
            "brush_kind": "aquarela",
            "params": {"brush_color": {"h": 0.3, "s": 0.5, "l": 0.7}, "gamma": 0.5, "n_segments": 5},
            "points": [{"x": 100, "y": 30}, {"x": 130, "y": 100}, {"x": 90, "y": 170}], "radius": 8.0,
            "backend": {"kind": "noisy", "shots": 128},
        }),
        smudge(0.9, 1, line(60.0, 60.0, 180.0, 180.0), 7.0),
        json!({
            "brush_kind": "heisen_continuous",
            "params": {"color": {"h": 0.5, "s": 0.4, "l": 0.6}, "gamma": 0.4},
            "points": line(200.0, 20.0, 200.0, 230.0), "radius": 15.0,
            "backend": {"kind": "sampling", "shots": 512},
        }),
        aquarela(1.0, line(5.0, 250.0, 250.0, 5.0), 4.0),
    ];
    json!({"version": 1, "strokes": strokes})
}
