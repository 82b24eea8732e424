use crate::canvas::{PixelMask, RegionRewrite};
use crate::color::HslColor;
use crate::scalar::Real;

/// How a segment's new colour is written back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UpdateMode<T> {
    /// Shift every pixel by the difference between the new colour and the segment mean
    /// it was computed from.
    Shift { from_h: T, from_l: T },
    /// Opaque fill with `(new_h, s, new_l)`.
    Overwrite { s: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentColorUpdate<T> {
    pub segment_index: usize,
    pub new_h: T,
    pub new_l: T,
    pub mode: UpdateMode<T>,
}

impl<T: Real> SegmentColorUpdate<T> {
    pub fn shift(segment_index: usize, from_h: T, from_l: T, new_h: T, new_l: T) -> Self {
        SegmentColorUpdate {
            segment_index,
            new_h,
            new_l,
            mode: UpdateMode::Shift { from_h, from_l },
        }
    }

    pub fn overwrite(segment_index: usize, color: HslColor<T>) -> Self {
        SegmentColorUpdate {
            segment_index,
            new_h: color.h,
            new_l: color.l,
            mode: UpdateMode::Overwrite { s: color.s },
        }
    }

    /// `(Δh, Δl)` of a shift update; `Δh` is wrapped into `[−½, ½)`.
    pub fn deltas(&self) -> Option<(T, T)> {
        match self.mode {
            UpdateMode::Shift { from_h, from_l } => {
                let half = T::lit(0.5);
                let dh = (self.new_h - from_h + half).wrap_unit() - half;
                Some((dh, self.new_l - from_l))
            }
            UpdateMode::Overwrite { .. } => None,
        }
    }

    pub fn overwrite_color(&self) -> Option<HslColor<T>> {
        match self.mode {
            UpdateMode::Overwrite { s } => Some(HslColor::new(self.new_h, s, self.new_l)),
            UpdateMode::Shift { .. } => None,
        }
    }
}

/// What a brush run produces, before quantization against the snapshot.
#[derive(Debug, Clone, PartialEq)]
pub enum BrushEffect {
    Segments {
        updates: Vec<SegmentColorUpdate<f64>>,
        masks: Vec<PixelMask>,
    },
    Rewrites(Vec<RegionRewrite>),
}
