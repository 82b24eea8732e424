use super::CanvasError;

/// Set of canvas pixels: a bounding box plus a bitset over it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PixelMask {
    x0: u32,
    y0: u32,
    width: u32,
    height: u32,
    bits: Vec<u64>,
    count: usize,
}

impl PixelMask {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a mask from pixel coordinates; duplicates are ignored.
    pub fn from_pixels<I>(pixels: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let pixels: Vec<(u32, u32)> = pixels.into_iter().collect();
        let Some(&(fx, fy)) = pixels.first() else {
            return Self::empty();
        };
        let (mut x0, mut y0, mut x1, mut y1) = (fx, fy, fx, fy);
        for &(x, y) in &pixels {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let width = x1 - x0 + 1;
        let height = y1 - y0 + 1;
        let cells = width as usize * height as usize;
        let mut mask = PixelMask {
            x0,
            y0,
            width,
            height,
            bits: vec![0; cells.div_ceil(64)],
            count: 0,
        };
        for (x, y) in pixels {
            mask.insert(x, y);
        }
        mask
    }

    fn index(&self, x: u32, y: u32) -> Option<usize> {
        if x < self.x0 || y < self.y0 || x - self.x0 >= self.width || y - self.y0 >= self.height {
            return None;
        }
        Some((y - self.y0) as usize * self.width as usize + (x - self.x0) as usize)
    }

    fn insert(&mut self, x: u32, y: u32) {
        let i = self.index(x, y).expect("pixel inside bounding box");
        let (word, bit) = (i / 64, 1u64 << (i % 64));
        if self.bits[word] & bit == 0 {
            self.bits[word] |= bit;
            self.count += 1;
        }
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        self.index(x, y)
            .is_some_and(|i| self.bits[i / 64] & (1u64 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// `(x0, y0, width, height)` of the bounding box.
    pub fn bounds(&self) -> (u32, u32, u32, u32) {
        (self.x0, self.y0, self.width, self.height)
    }

    /// Covered pixels in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let w = self.width as usize;
        (0..self.width as usize * self.height as usize)
            .filter(move |&i| self.bits[i / 64] & (1u64 << (i % 64)) != 0)
            .map(move |i| (self.x0 + (i % w) as u32, self.y0 + (i / w) as u32))
    }

    /// The mask shifted by `(dx, dy)`; fails if any pixel would leave a `width × height` canvas.
    pub fn translated(&self, dx: i64, dy: i64, width: u32, height: u32) -> Result<PixelMask, CanvasError> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let nx0 = self.x0 as i64 + dx;
        let ny0 = self.y0 as i64 + dy;
        let nx1 = nx0 + self.width as i64 - 1;
        let ny1 = ny0 + self.height as i64 - 1;
        if nx0 < 0 || ny0 < 0 || nx1 >= width as i64 || ny1 >= height as i64 {
            return Err(CanvasError::Placement {
                x: nx0,
                y: ny0,
                width: self.width,
                height: self.height,
            });
        }
        let mut out = self.clone();
        out.x0 = nx0 as u32;
        out.y0 = ny0 as u32;
        Ok(out)
    }

    pub fn is_disjoint(&self, other: &PixelMask) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().all(|(x, y)| !large.contains(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_pixels_dedups_and_iterates_row_major() {
        let m = PixelMask::from_pixels([(3, 1), (1, 2), (3, 1), (2, 1)]);
        assert_eq!(m.len(), 3);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![(2, 1), (3, 1), (1, 2)]);
        assert!(m.contains(1, 2) && !m.contains(2, 2) && !m.contains(100, 100));
    }

    #[test]
    fn translation_checks_bounds() {
        let m = PixelMask::from_pixels([(1, 1), (2, 2)]);
        let t = m.translated(5, 0, 10, 10).unwrap();
        assert!(t.contains(6, 1) && t.contains(7, 2));
        assert!(matches!(m.translated(8, 0, 10, 10), Err(CanvasError::Placement { .. })));
        assert!(m.translated(-2, 0, 10, 10).is_err());
    }
}
