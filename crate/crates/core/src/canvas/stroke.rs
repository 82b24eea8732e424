use serde::{Deserialize, Serialize};

use super::mask::PixelMask;
use super::CanvasError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }

    fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Stroke geometry: a polyline swept by a disk of constant radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stroke {
    pub points: Vec<Point>,
    pub radius: f64,
}

pub const MIN_RADIUS: f64 = 0.5;

impl Stroke {
    pub fn new(points: Vec<Point>, radius: f64) -> Result<Self, CanvasError> {
        let stroke = Stroke { points, radius };
        stroke.validate()?;
        Ok(stroke)
    }

    pub fn validate(&self) -> Result<(), CanvasError> {
        if self.points.is_empty() {
            return Err(CanvasError::InvalidStroke("stroke has no points".into()));
        }
        if !(self.radius.is_finite() && self.radius >= MIN_RADIUS) {
            return Err(CanvasError::InvalidStroke(format!(
                "radius {} below minimum {MIN_RADIUS}",
                self.radius
            )));
        }
        if self.points.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(CanvasError::InvalidStroke("non-finite point coordinate".into()));
        }
        Ok(())
    }

    pub fn arc_length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    /// Splits the path at `n − 1` equal-arc-length cut points.
    fn sub_paths(&self, n: usize) -> Vec<Vec<Point>> {
        let total = self.arc_length();
        if total == 0.0 || self.points.len() == 1 {
            return vec![vec![self.points[0]]; n];
        }
        let mut cum = Vec::with_capacity(self.points.len());
        let mut acc = 0.0;
        cum.push(0.0);
        for w in self.points.windows(2) {
            acc += w[0].dist(w[1]);
            cum.push(acc);
        }
        let point_at = |s: f64| -> (usize, Point) {
            // segment index i such that cum[i] <= s <= cum[i+1]
            let i = match cum.partition_point(|&c| c <= s) {
                0 => 0,
                k => (k - 1).min(self.points.len() - 2),
            };
            let len = cum[i + 1] - cum[i];
            let t = if len > 0.0 { ((s - cum[i]) / len).clamp(0.0, 1.0) } else { 0.0 };
            (i, self.points[i].lerp(self.points[i + 1], t))
        };
        (0..n)
            .map(|k| {
                let (s0, s1) = (total * k as f64 / n as f64, total * (k + 1) as f64 / n as f64);
                let (i0, p0) = if k == 0 { (0, self.points[0]) } else { point_at(s0) };
                let (i1, p1) = if k + 1 == n {
                    (self.points.len() - 2, self.points[self.points.len() - 1])
                } else {
                    point_at(s1)
                };
                let mut path = vec![p0];
                path.extend(self.points[i0 + 1..=i1].iter().copied());
                path.push(p1);
                path
            })
            .collect()
    }
}

fn dist_to_segment(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    p.dist(Point::new(a.x + t * dx, a.y + t * dy))
}

fn dist_to_path(p: Point, path: &[Point]) -> f64 {
    if path.len() == 1 {
        return p.dist(path[0]);
    }
    path.windows(2)
        .map(|w| dist_to_segment(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

/// Pixel centres (integer coordinates) within `radius` of `path`, clipped to the canvas.
fn covered_pixels(path: &[Point], radius: f64, width: u32, height: u32) -> Vec<(u32, u32)> {
    let (mut xmin, mut ymin, mut xmax, mut ymax) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in path {
        xmin = xmin.min(p.x);
        ymin = ymin.min(p.y);
        xmax = xmax.max(p.x);
        ymax = ymax.max(p.y);
    }
    let lo = |v: f64| (v - radius).ceil().max(0.0);
    let hi = |v: f64, limit: u32| (v + radius).floor().min(limit as f64 - 1.0);
    let (x0, y0, x1, y1) = (lo(xmin), lo(ymin), hi(xmax, width), hi(ymax, height));
    if x0 > x1 || y0 > y1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for y in y0 as u32..=y1 as u32 {
        for x in x0 as u32..=x1 as u32 {
            if dist_to_path(Point::new(x as f64, y as f64), path) <= radius {
                out.push((x, y));
            }
        }
    }
    out
}

/// Union of disks of the stroke radius centred along the polyline, clipped to the canvas.
pub fn rasterize(stroke: &Stroke, width: u32, height: u32) -> Result<PixelMask, CanvasError> {
    stroke.validate()?;
    let pixels = covered_pixels(&stroke.points, stroke.radius, width, height);
    if pixels.is_empty() {
        return Err(CanvasError::EmptyMask);
    }
    Ok(PixelMask::from_pixels(pixels))
}

/// Splits a stroke into `n` pairwise-disjoint masks along equal arc lengths.
///
/// Every pixel of the full rasterization goes to the earliest sub-path that covers it,
/// so the segments partition [`rasterize`]'s mask exactly.
pub fn segment(stroke: &Stroke, n: usize, width: u32, height: u32) -> Result<Vec<PixelMask>, CanvasError> {
    if n == 0 {
        return Err(CanvasError::InvalidStroke("segment count must be at least 1".into()));
    }
    let full = rasterize(stroke, width, height)?;
    if n > full.len() {
        return Err(CanvasError::TooManySegments { requested: n, pixels: full.len() });
    }
    if n == 1 {
        return Ok(vec![full]);
    }
    let paths = stroke.sub_paths(n);
    let mut buckets: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for (x, y) in full.iter() {
        let p = Point::new(x as f64, y as f64);
        // nearest sub-path wins; exact ties at a joint go to the earlier one
        let owner = paths
            .iter()
            .map(|path| dist_to_path(p, path))
            .enumerate()
            .fold((0, f64::INFINITY), |best, (i, d)| if d < best.1 { (i, d) } else { best })
            .0;
        buckets[owner].push((x, y));
    }
    if buckets.iter().any(Vec::is_empty) {
        return Err(CanvasError::TooManySegments { requested: n, pixels: full.len() });
    }
    Ok(buckets.into_iter().map(PixelMask::from_pixels).collect())
}

/// Pixels whose centres lie inside the closed polygon (even-odd rule). Polygons with fewer
/// than three vertices fall back to the swept-disk rasterization.
pub fn fill_polygon(stroke: &Stroke, width: u32, height: u32) -> Result<PixelMask, CanvasError> {
    stroke.validate()?;
    let pts = &stroke.points;
    if pts.len() < 3 {
        return rasterize(stroke, width, height);
    }
    let (mut ymin, mut ymax, mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in pts {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymin = ymin.min(p.y);
        ymax = ymax.max(p.y);
    }
    let y0 = ymin.ceil().max(0.0);
    let y1 = ymax.floor().min(height as f64 - 1.0);
    let x0 = xmin.ceil().max(0.0);
    let x1 = xmax.floor().min(width as f64 - 1.0);
    let mut pixels = Vec::new();
    if x0 <= x1 && y0 <= y1 {
        for y in y0 as u32..=y1 as u32 {
            for x in x0 as u32..=x1 as u32 {
                if inside_polygon(Point::new(x as f64, y as f64), pts) {
                    pixels.push((x, y));
                }
            }
        }
    }
    if pixels.is_empty() {
        return Err(CanvasError::EmptyMask);
    }
    Ok(PixelMask::from_pixels(pixels))
}

fn inside_polygon(p: Point, poly: &[Point]) -> bool {
    let mut inside = false;
    let mut j = poly.len() - 1;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
            inside = !inside;
        }
        j = i;
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(x0: f64, x1: f64, y: f64, r: f64) -> Stroke {
        Stroke::new(vec![Point::new(x0, y), Point::new(x1, y)], r).unwrap()
    }

    #[test]
    fn single_point_radius_one_is_a_plus() {
        let s = Stroke::new(vec![Point::new(5.0, 5.0)], 1.0).unwrap();
        let m = rasterize(&s, 20, 20).unwrap();
        assert_eq!(m.len(), 5);
        assert!(m.contains(5, 5) && m.contains(4, 5) && m.contains(5, 6));
    }

    #[test]
    fn horizontal_line_is_vertically_symmetric() {
        let m = rasterize(&line(5.0, 15.0, 10.0, 2.0), 30, 30).unwrap();
        for (x, y) in m.iter() {
            assert!(m.contains(x, 20 - y));
        }
    }

    #[test]
    fn off_canvas_stroke_is_empty() {
        let s = Stroke::new(vec![Point::new(-50.0, -50.0)], 2.0).unwrap();
        assert!(matches!(rasterize(&s, 10, 10), Err(CanvasError::EmptyMask)));
    }

    #[test]
    fn invalid_strokes_are_rejected() {
        assert!(Stroke::new(vec![], 2.0).is_err());
        assert!(Stroke::new(vec![Point::new(0.0, 0.0)], 0.4).is_err());
    }

    #[test]
    fn one_segment_is_the_full_mask() {
        let s = line(2.0, 40.0, 10.0, 3.0);
        let segs = segment(&s, 1, 64, 64).unwrap();
        assert_eq!(segs, vec![rasterize(&s, 64, 64).unwrap()]);
    }

    #[test]
    fn straight_path_splits_evenly() {
        let s = line(10.0, 110.0, 20.0, 2.0);
        let segs = segment(&s, 4, 128, 64).unwrap();
        let counts: Vec<usize> = segs.iter().map(PixelMask::len).collect();
        let (min, max) = (*counts.iter().min().unwrap(), *counts.iter().max().unwrap());
        assert!((max - min) as f64 <= 0.15 * min as f64, "{counts:?}");
    }

    #[test]
    fn degenerate_path_cannot_be_split() {
        let s = Stroke::new(vec![Point::new(5.0, 5.0)], 3.0).unwrap();
        assert!(matches!(segment(&s, 2, 20, 20), Err(CanvasError::TooManySegments { .. })));
        assert!(matches!(segment(&s, 1000, 20, 20), Err(CanvasError::TooManySegments { .. })));
    }

    #[test]
    fn polygon_fill_covers_interior() {
        let s = Stroke::new(
            vec![Point::new(1.0, 1.0), Point::new(6.0, 1.0), Point::new(6.0, 6.0), Point::new(1.0, 6.0)],
            1.0,
        )
        .unwrap();
        let m = fill_polygon(&s, 10, 10).unwrap();
        assert!(m.contains(3, 3));
        assert!(!m.contains(8, 8));
        assert!(m.len() >= 16);
    }
}
