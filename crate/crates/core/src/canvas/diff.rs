use std::collections::BTreeMap;
use std::sync::Arc;

use super::image::CanvasImage;
use super::CanvasError;
use crate::brushes::{BrushEffect, UpdateMode};
use crate::color::{hsl_to_rgb, rgb_to_hsl, shift_color, RgbColor};

/// Immutable canvas copy taken when a job is submitted.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub id: u64,
    pub image: Arc<CanvasImage>,
}

impl Snapshot {
    pub fn new(id: u64, image: Arc<CanvasImage>) -> Self {
        Snapshot { id, image }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffEntry {
    pub x: u32,
    pub y: u32,
    pub rgba: [u8; 4],
}

/// Pixels a brush changed relative to its snapshot, row-major and unique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PixelDiff {
    entries: Vec<DiffEntry>,
}

impl PixelDiff {
    /// Sorts and deduplicates; a later entry for the same pixel wins.
    pub fn from_entries<I: IntoIterator<Item = DiffEntry>>(entries: I) -> Self {
        let map: BTreeMap<(u32, u32), [u8; 4]> = entries.into_iter().map(|e| ((e.y, e.x), e.rgba)).collect();
        PixelDiff {
            entries: map.into_iter().map(|((y, x), rgba)| DiffEntry { x, y, rgba }).collect(),
        }
    }

    pub fn entries(&self) -> &[DiffEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Renders a brush effect against the snapshot pixels and keeps only pixels whose
/// quantized RGBA changed. Alpha is carried over untouched.
pub fn apply_updates(snapshot: &CanvasImage, effect: &BrushEffect) -> PixelDiff {
    let mut edits: BTreeMap<(u32, u32), [u8; 4]> = BTreeMap::new();
    let mut write = |x: u32, y: u32, rgb: [u8; 3]| {
        let a = snapshot.pixel(x, y)[3];
        edits.insert((y, x), [rgb[0], rgb[1], rgb[2], a]);
    };
    match effect {
        BrushEffect::Segments { updates, masks } => {
            for update in updates {
                let Some(mask) = masks.get(update.segment_index) else {
                    continue;
                };
                match update.mode {
                    UpdateMode::Shift { .. } => {
                        let (dh, dl) = update.deltas().expect("shift update");
                        for (x, y) in mask.iter() {
                            let p = snapshot.pixel(x, y);
                            let hsl = rgb_to_hsl(&RgbColor::from_u8([p[0], p[1], p[2]]));
                            write(x, y, hsl_to_rgb(&shift_color(&hsl, dh, dl)).to_u8());
                        }
                    }
                    UpdateMode::Overwrite { .. } => {
                        let rgb = hsl_to_rgb(&update.overwrite_color().expect("overwrite update")).to_u8();
                        for (x, y) in mask.iter() {
                            write(x, y, rgb);
                        }
                    }
                }
            }
        }
        BrushEffect::Rewrites(rewrites) => {
            for rewrite in rewrites {
                for &(x, y, rgb) in &rewrite.pixels {
                    write(x, y, rgb.to_u8());
                }
            }
        }
    }
    PixelDiff {
        entries: edits
            .into_iter()
            .filter(|&((y, x), rgba)| snapshot.pixel(x, y) != rgba)
            .map(|((y, x), rgba)| DiffEntry { x, y, rgba })
            .collect(),
    }
}

/// Writes the diff pixels into `canvas`. All coordinates are checked first, so an
/// out-of-bounds entry leaves the canvas untouched.
pub fn paste(canvas: &mut CanvasImage, diff: &PixelDiff) -> Result<(), CanvasError> {
    if let Some(bad) = diff.entries.iter().find(|e| !canvas.contains(e.x, e.y)) {
        return Err(CanvasError::OutOfBounds { x: bad.x, y: bad.y });
    }
    for e in &diff.entries {
        canvas.set_pixel(e.x, e.y, e.rgba);
    }
    Ok(())
}

/// Snapshot with the diff applied, for previews.
pub fn preview(snapshot: &CanvasImage, diff: &PixelDiff) -> Result<CanvasImage, CanvasError> {
    let mut out = snapshot.clone();
    paste(&mut out, diff)?;
    Ok(out)
}

/// Colour rewrite of individual pixels (used by Collage).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RegionRewrite {
    pub pixels: Vec<(u32, u32, RgbColor<f64>)>,
}
