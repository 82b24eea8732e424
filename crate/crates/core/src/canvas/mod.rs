//! Raster canvas: PNG I/O, stroke rasterization and segmentation, region statistics,
//! and the snapshot → diff → paste cycle.

mod diff;
mod image;
mod mask;
mod region;
mod stroke;

use thiserror::Error;

pub use diff::{apply_updates, paste, preview, DiffEntry, PixelDiff, RegionRewrite, Snapshot};
pub use image::CanvasImage;
pub use mask::PixelMask;
pub use region::{region_mean_hsl, region_mean_hsl_checked};
pub use stroke::{fill_polygon, rasterize, segment, Point, Stroke, MIN_RADIUS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanvasError {
    #[error("image has zero area")]
    EmptyImage,
    #[error("pixel buffer has {got} bytes, expected {expected}")]
    BufferSize { expected: usize, got: usize },
    #[error("PNG decode failed at byte {offset}: {message}")]
    Decode { offset: u64, message: String },
    #[error("PNG encode failed: {0}")]
    Encode(String),
    #[error("unsupported PNG format: {0}")]
    UnsupportedFormat(String),
    #[error("invalid stroke: {0}")]
    InvalidStroke(String),
    #[error("stroke covers no canvas pixels")]
    EmptyMask,
    #[error("cannot split a {pixels}-pixel stroke into {requested} non-empty segments")]
    TooManySegments { requested: usize, pixels: usize },
    #[error("region placed at ({x}, {y}) with size {width}x{height} does not fit the canvas")]
    Placement { x: i64, y: i64, width: u32, height: u32 },
    #[error("diff entry ({x}, {y}) outside the canvas")]
    OutOfBounds { x: u32, y: u32 },
}
