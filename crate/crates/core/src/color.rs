//! HSL colours as single-qubit states.
//!
//! Hue and luminosity map onto the Bloch sphere as `φ = 2π·h`, `θ = π·l`; saturation is
//! never encoded and passes through unchanged. Hue is measured in turns, `[0, 1)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Real;
use crate::sim::PauliVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("circular mean of an empty hue set")]
    Empty,
    #[error("{hues} hues but {weights} weights")]
    WeightCount { hues: usize, weights: usize },
    #[error("weights must be finite and non-negative")]
    BadWeight,
    #[error("hue resultant vanishes; circular mean undefined")]
    DegenerateMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HslColor<T> {
    pub h: T,
    pub s: T,
    pub l: T,
}

impl<T: Real> HslColor<T> {
    /// Wraps the hue into `[0, 1)` and clamps saturation and luminosity to `[0, 1]`.
    pub fn new(h: T, s: T, l: T) -> Self {
        HslColor {
            h: h.wrap_unit(),
            s: clamp01(s),
            l: clamp01(l),
        }
    }

    pub fn is_valid(&self) -> bool {
        let unit = |x: T| x >= T::zero() && x <= T::one();
        self.h >= T::zero() && self.h < T::one() && unit(self.s) && unit(self.l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RgbColor<T> {
    pub r: T,
    pub g: T,
    pub b: T,
}

impl<T: Real> RgbColor<T> {
    pub fn new(r: T, g: T, b: T) -> Self {
        RgbColor { r, g, b }
    }

    pub fn from_u8(rgb: [u8; 3]) -> Self {
        let f = |c: u8| T::from_u8(c).unwrap() / T::lit(255.0);
        RgbColor::new(f(rgb[0]), f(rgb[1]), f(rgb[2]))
    }

    /// Rounds each clamped channel to the nearest 8-bit level.
    pub fn to_u8(&self) -> [u8; 3] {
        let q = |c: T| (clamp01(c) * T::lit(255.0)).round().to_u8().unwrap_or(0);
        [q(self.r), q(self.g), q(self.b)]
    }
}

/// Spherical angles of a pure single-qubit state `Rz(φ)·Ry(θ)|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochAngles<T> {
    pub phi: T,
    pub theta: T,
}

impl<T: Real> BlochAngles<T> {
    pub fn new(phi: T, theta: T) -> Self {
        BlochAngles { phi, theta }
    }

    /// `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn bloch_vector(&self) -> PauliVector<T> {
        let (sp, cp) = self.phi.sin_cos();
        let (st, ct) = self.theta.sin_cos();
        PauliVector::new(st * cp, st * sp, ct)
    }
}

fn clamp01<T: Real>(x: T) -> T {
    x.max(T::zero()).min(T::one())
}

pub fn encode_hl<T: Real>(color: &HslColor<T>) -> BlochAngles<T> {
    BlochAngles::new(T::TAU() * color.h, T::PI() * color.l)
}

/// Inverts [`encode_hl`] from a measured Bloch vector.
///
/// Near the poles (or for a state mixed in the XY plane) the azimuth is meaningless and
/// `fallback_hue` is returned; for a fully mixed state the luminosity is `0.5`.
pub fn decode_bloch<T: Real>(e: &PauliVector<T>, fallback_hue: T) -> (T, T) {
    let cutoff = T::lit(1e-6);
    let rxy = (e.ex * e.ex + e.ey * e.ey).sqrt();
    if e.norm() < cutoff {
        return (fallback_hue.wrap_unit(), T::lit(0.5));
    }
    if rxy < cutoff {
        let theta = T::zero().atan2(e.ez);
        return (fallback_hue.wrap_unit(), theta / T::PI());
    }
    let phi = e.ey.atan2(e.ex);
    let theta = rxy.atan2(e.ez);
    ((phi / T::TAU()).wrap_unit(), theta / T::PI())
}

/// Weighted circular mean of hues (turns), in `[0, 1)`.
pub fn circular_mean_hue<T: Real>(hues: &[T], weights: Option<&[T]>) -> Result<T, ColorError> {
    if hues.is_empty() {
        return Err(ColorError::Empty);
    }
    if let Some(w) = weights {
        if w.len() != hues.len() {
            return Err(ColorError::WeightCount {
                hues: hues.len(),
                weights: w.len(),
            });
        }
        if w.iter().any(|x| !x.is_finite() || *x < T::zero()) {
            return Err(ColorError::BadWeight);
        }
    }
    let (mut re, mut im, mut total) = (T::zero(), T::zero(), T::zero());
    for (k, h) in hues.iter().enumerate() {
        let w = weights.map_or(T::one(), |w| w[k]);
        let (s, c) = (T::TAU() * *h).sin_cos();
        re += w * c;
        im += w * s;
        total += w;
    }
    let resultant = (re * re + im * im).sqrt();
    if total <= T::zero() || resultant <= T::lit(1e-9) * total {
        return Err(ColorError::DegenerateMean);
    }
    Ok((im.atan2(re) / T::TAU()).wrap_unit())
}

/// Shifts every pixel's hue (with wrap) and luminosity (with cropping); saturation is kept.
pub fn shift_region<T: Real>(pixels: &[HslColor<T>], delta_h: T, delta_l: T) -> Vec<HslColor<T>> {
    pixels.iter().map(|p| shift_color(p, delta_h, delta_l)).collect()
}

pub fn shift_color<T: Real>(p: &HslColor<T>, delta_h: T, delta_l: T) -> HslColor<T> {
    HslColor {
        h: (p.h + delta_h).wrap_unit(),
        s: p.s,
        l: clamp01(p.l + delta_l),
    }
}

/// Standard HSL cylinder. Achromatic colours get hue 0.
pub fn rgb_to_hsl<T: Real>(c: &RgbColor<T>) -> HslColor<T> {
    let (r, g, b) = (clamp01(c.r), clamp01(c.g), clamp01(c.b));
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let two = T::lit(2.0);
    let l = (max + min) / two;
    let d = max - min;
    if d <= T::zero() {
        return HslColor { h: T::zero(), s: T::zero(), l };
    }
    let s = if l > T::lit(0.5) {
        d / (two - max - min)
    } else {
        d / (max + min)
    };
    let six = T::lit(6.0);
    let h = if max == r {
        (g - b) / d + if g < b { six } else { T::zero() }
    } else if max == g {
        (b - r) / d + two
    } else {
        (r - g) / d + T::lit(4.0)
    };
    HslColor {
        h: (h / six).wrap_unit(),
        s: clamp01(s),
        l,
    }
}

pub fn hsl_to_rgb<T: Real>(c: &HslColor<T>) -> RgbColor<T> {
    let (h, s, l) = (c.h.wrap_unit(), clamp01(c.s), clamp01(c.l));
    if s <= T::zero() {
        return RgbColor::new(l, l, l);
    }
    let q = if l < T::lit(0.5) {
        l * (T::one() + s)
    } else {
        l + s - l * s
    };
    let p = T::lit(2.0) * l - q;
    let third = T::one() / T::lit(3.0);
    RgbColor::new(
        hue_channel(p, q, h + third),
        hue_channel(p, q, h),
        hue_channel(p, q, h - third),
    )
}

fn hue_channel<T: Real>(p: T, q: T, t: T) -> T {
    let t = t.wrap_unit();
    let six = T::lit(6.0);
    if t < T::one() / six {
        p + (q - p) * six * t
    } else if t < T::lit(0.5) {
        q
    } else if t < T::lit(2.0) / T::lit(3.0) {
        p + (q - p) * (T::lit(2.0) / T::lit(3.0) - t) * six
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn encode_examples() {
        let a = encode_hl(&HslColor::new(0.0, 1.0, 0.0));
        assert_eq!((a.phi, a.theta), (0.0, 0.0));
        let a = encode_hl(&HslColor::new(0.5, 0.3, 0.5));
        assert!((a.phi - PI).abs() < 1e-15 && (a.theta - PI / 2.0).abs() < 1e-15);
        let a = encode_hl(&HslColor::new(0.25, 0.0, 1.0));
        assert!((a.phi - PI / 2.0).abs() < 1e-15 && (a.theta - PI).abs() < 1e-15);
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_bloch(&PauliVector::new(0.0, 0.0, 1.0), 0.7), (0.7, 0.0));
        assert_eq!(decode_bloch(&PauliVector::new(0.0, 0.0, -1.0), 0.2), (0.2, 1.0));
        let (h, l) = decode_bloch(&PauliVector::<f64>::new(0.0, 1.0, 0.0), 0.0);
        assert!((h - 0.25).abs() < 1e-15 && (l - 0.5).abs() < 1e-15);
        assert_eq!(decode_bloch(&PauliVector::new(0.0, 0.0, 0.0), 0.4), (0.4, 0.5));
    }

    #[test]
    fn circular_mean_examples() {
        let m = circular_mean_hue(&[0.95f64, 0.05], None).unwrap();
        assert!(m.min(1.0 - m) < 1e-12, "{m}");
        assert!((circular_mean_hue(&[0.2f64, 0.2, 0.2], None).unwrap() - 0.2).abs() < 1e-12);
        assert!((circular_mean_hue(&[0.0f64, 0.25], None).unwrap() - 0.125).abs() < 1e-12);
        assert_eq!(circular_mean_hue(&[0.0, 0.5], None), Err(ColorError::DegenerateMean));
        assert_eq!(circular_mean_hue::<f64>(&[], None), Err(ColorError::Empty));
        assert_eq!(
            circular_mean_hue(&[0.1, 0.3], Some(&[0.0, 0.0])),
            Err(ColorError::DegenerateMean)
        );
        let weighted = circular_mean_hue(&[0.0f64, 0.25], Some(&[3.0, 0.0])).unwrap();
        assert!(weighted.abs() < 1e-12);
    }

    #[test]
    fn shift_examples() {
        let px = [HslColor::new(0.9f64, 0.4, 0.95)];
        assert_eq!(shift_region(&px, 0.0, 0.0), px.to_vec());
        let out = shift_region(&px, 0.2, 0.2);
        assert!((out[0].h - 0.1).abs() < 1e-12);
        assert_eq!(out[0].l, 1.0);
        assert_eq!(out[0].s, 0.4);
    }

    #[test]
    fn rgb_hsl_examples() {
        let red = rgb_to_hsl(&RgbColor::new(1.0, 0.0, 0.0));
        assert_eq!((red.h, red.s, red.l), (0.0, 1.0, 0.5));
        let gray = rgb_to_hsl(&RgbColor::new(0.5, 0.5, 0.5));
        assert_eq!((gray.h, gray.s, gray.l), (0.0, 0.0, 0.5));
        let cyan = rgb_to_hsl(&RgbColor::new(0.0f64, 1.0, 1.0));
        assert!((cyan.h - 0.5).abs() < 1e-12);
        let back = hsl_to_rgb(&HslColor::new(0.5f64, 1.0, 0.5));
        assert!(back.r.abs() < 1e-12 && (back.g - 1.0).abs() < 1e-12 && (back.b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn f32_codec_is_usable() {
        let a = encode_hl(&HslColor::new(0.3f32, 0.5, 0.6));
        let (h, l) = decode_bloch(&a.bloch_vector(), 0.0);
        assert!((h - 0.3).abs() < 1e-5 && (l - 0.6).abs() < 1e-5);
    }
}
