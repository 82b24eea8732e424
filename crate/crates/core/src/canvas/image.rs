use std::cell::Cell;
use std::io::{self, BufRead, Cursor, Read, Seek, SeekFrom};
use std::rc::Rc;

use super::CanvasError;

/// Row-major RGBA8 raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanvasImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl CanvasImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self, CanvasError> {
        if width == 0 || height == 0 {
            return Err(CanvasError::EmptyImage);
        }
        let expected = 4 * width as usize * height as usize;
        if pixels.len() != expected {
            return Err(CanvasError::BufferSize {
                expected,
                got: pixels.len(),
            });
        }
        Ok(CanvasImage { width, height, pixels })
    }

    pub fn filled(width: u32, height: u32, rgba: [u8; 4]) -> Result<Self, CanvasError> {
        let n = width as usize * height as usize;
        Self::new(width, height, rgba.repeat(n))
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dims(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        x < self.width && y < self.height
    }

    fn offset(&self, x: u32, y: u32) -> usize {
        4 * (y as usize * self.width as usize + x as usize)
    }

    /// Panics if `(x, y)` lies outside the image.
    pub fn pixel(&self, x: u32, y: u32) -> [u8; 4] {
        assert!(self.contains(x, y), "pixel ({x}, {y}) outside {}x{}", self.width, self.height);
        let o = self.offset(x, y);
        [self.pixels[o], self.pixels[o + 1], self.pixels[o + 2], self.pixels[o + 3]]
    }

    pub fn set_pixel(&mut self, x: u32, y: u32, rgba: [u8; 4]) {
        assert!(self.contains(x, y), "pixel ({x}, {y}) outside {}x{}", self.width, self.height);
        let o = self.offset(x, y);
        self.pixels[o..o + 4].copy_from_slice(&rgba);
    }

    /// Decodes an 8-bit RGB/RGBA (or greyscale) PNG.
    pub fn load_png(bytes: &[u8]) -> Result<Self, CanvasError> {
        let reader = TrackingCursor::new(bytes);
        let position = reader.position.clone();
        let decode_err = |e: png::DecodingError| CanvasError::Decode {
            offset: position.get(),
            message: e.to_string(),
        };
        let mut decoder = png::Decoder::new(reader);
        decoder.set_transformations(png::Transformations::EXPAND);
        let mut reader = decoder.read_info().map_err(decode_err)?;
        let size = reader.output_buffer_size().ok_or_else(|| CanvasError::Decode {
            offset: position.get(),
            message: "image too large".into(),
        })?;
        let mut buf = vec![0u8; size];
        let info = reader.next_frame(&mut buf).map_err(decode_err)?;
        if info.bit_depth != png::BitDepth::Eight {
            return Err(CanvasError::UnsupportedFormat(format!("bit depth {:?}", info.bit_depth)));
        }
        let data = &buf[..info.buffer_size()];
        let n = info.width as usize * info.height as usize;
        let mut rgba = Vec::with_capacity(4 * n);
        match info.color_type {
            png::ColorType::Rgba => rgba.extend_from_slice(data),
            png::ColorType::Rgb => {
                for px in data.chunks_exact(3) {
                    rgba.extend_from_slice(&[px[0], px[1], px[2], 255]);
                }
            }
            png::ColorType::Grayscale => {
                for &g in data {
                    rgba.extend_from_slice(&[g, g, g, 255]);
                }
            }
            png::ColorType::GrayscaleAlpha => {
                for px in data.chunks_exact(2) {
                    rgba.extend_from_slice(&[px[0], px[0], px[0], px[1]]);
                }
            }
            other => return Err(CanvasError::UnsupportedFormat(format!("colour type {other:?}"))),
        }
        CanvasImage::new(info.width, info.height, rgba)
    }

    /// Encodes as RGBA8 PNG with fixed compression and filter settings, so equal images
    /// always produce equal bytes.
    pub fn save_png(&self) -> Result<Vec<u8>, CanvasError> {
        let mut out = Vec::new();
        {
            let mut encoder = png::Encoder::new(&mut out, self.width, self.height);
            encoder.set_color(png::ColorType::Rgba);
            encoder.set_depth(png::BitDepth::Eight);
            encoder.set_compression(png::Compression::Balanced);
            encoder.set_filter(png::Filter::Adaptive);
            let mut writer = encoder
                .write_header()
                .map_err(|e| CanvasError::Encode(e.to_string()))?;
            writer
                .write_image_data(&self.pixels)
                .map_err(|e| CanvasError::Encode(e.to_string()))?;
            writer.finish().map_err(|e| CanvasError::Encode(e.to_string()))?;
        }
        Ok(out)
    }
}

/// Cursor that publishes its read position so decode errors can report a byte offset.
struct TrackingCursor<'a> {
    inner: Cursor<&'a [u8]>,
    position: Rc<Cell<u64>>,
}

impl<'a> TrackingCursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        TrackingCursor {
            inner: Cursor::new(bytes),
            position: Rc::new(Cell::new(0)),
        }
    }

    fn sync(&self) {
        self.position.set(self.inner.position());
    }
}

impl Read for TrackingCursor<'_> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = self.inner.read(buf)?;
        self.sync();
        Ok(n)
    }
}

impl BufRead for TrackingCursor<'_> {
    fn fill_buf(&mut self) -> io::Result<&[u8]> {
        self.inner.fill_buf()
    }

    fn consume(&mut self, amt: usize) {
        self.inner.consume(amt);
        self.sync();
    }
}

impl Seek for TrackingCursor<'_> {
    fn seek(&mut self, pos: SeekFrom) -> io::Result<u64> {
        let p = self.inner.seek(pos)?;
        self.sync();
        Ok(p)
    }
}
