use super::image::CanvasImage;
use super::mask::PixelMask;
use super::CanvasError;
use crate::color::{circular_mean_hue, rgb_to_hsl, ColorError, HslColor, RgbColor};

/// Mean colour under a mask: circular mean of hue, arithmetic means of saturation and
/// luminosity, every pixel weighted equally. Alpha is ignored.
///
/// When the hues cancel out the first pixel's hue is used.
pub fn region_mean_hsl(image: &CanvasImage, mask: &PixelMask) -> Result<HslColor<f64>, CanvasError> {
    region_mean_hsl_checked(image, mask).map(|(c, _)| c)
}

/// As [`region_mean_hsl`], also reporting whether the degenerate-hue fallback fired.
pub fn region_mean_hsl_checked(image: &CanvasImage, mask: &PixelMask) -> Result<(HslColor<f64>, bool), CanvasError> {
    if mask.is_empty() {
        return Err(CanvasError::EmptyMask);
    }
    let colors = region_hsl(image, mask);
    let n = colors.len() as f64;
    let hues: Vec<f64> = colors.iter().map(|c| c.h).collect();
    let s = colors.iter().map(|c| c.s).sum::<f64>() / n;
    let l = colors.iter().map(|c| c.l).sum::<f64>() / n;
    let (h, degenerate) = match circular_mean_hue(&hues, None) {
        Ok(h) => (h, false),
        Err(ColorError::DegenerateMean) => (hues[0], true),
        Err(e) => unreachable!("non-empty unweighted hue set: {e}"),
    };
    Ok((HslColor::new(h, s, l), degenerate))
}

pub(crate) fn region_hsl(image: &CanvasImage, mask: &PixelMask) -> Vec<HslColor<f64>> {
    mask.iter()
        .map(|(x, y)| {
            let p = image.pixel(x, y);
            rgb_to_hsl(&RgbColor::from_u8([p[0], p[1], p[2]]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_region_returns_its_colour() {
        let img = CanvasImage::filled(4, 4, [255, 0, 0, 255]).unwrap();
        let mask = PixelMask::from_pixels([(0, 0), (1, 1), (2, 3)]);
        let c = region_mean_hsl(&img, &mask).unwrap();
        assert_eq!((c.h, c.s, c.l), (0.0, 1.0, 0.5));
    }

    #[test]
    fn antipodal_hues_fall_back_to_first_pixel() {
        let mut img = CanvasImage::filled(2, 1, [255, 0, 0, 255]).unwrap();
        img.set_pixel(1, 0, [0, 255, 255, 255]);
        let mask = PixelMask::from_pixels([(0, 0), (1, 0)]);
        let (c, degenerate) = region_mean_hsl_checked(&img, &mask).unwrap();
        assert!(degenerate);
        assert_eq!(c.h, 0.0);
    }

    #[test]
    fn empty_mask_is_an_error() {
        let img = CanvasImage::filled(2, 2, [0; 4]).unwrap();
        assert!(matches!(region_mean_hsl(&img, &PixelMask::empty()), Err(CanvasError::EmptyMask)));
    }
}
