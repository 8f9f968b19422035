use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Axis-aligned rectangle with integer corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 4]", into = "[u32; 4]")]
pub struct Rect {
    pub x_lo: u32,
    pub y_lo: u32,
    pub x_hi: u32,
    pub y_hi: u32,
}

impl Rect {
    pub const fn new(x_lo: u32, y_lo: u32, x_hi: u32, y_hi: u32) -> Self {
        Rect { x_lo, y_lo, x_hi, y_hi }
    }

    pub fn width(&self) -> u32 {
        self.x_hi - self.x_lo
    }

    pub fn height(&self) -> u32 {
        self.y_hi - self.y_lo
    }

    pub fn area(&self) -> u64 {
        u64::from(self.width()) * u64::from(self.height())
    }

    /// Interiors intersect.
    pub fn overlaps(&self, o: &Rect) -> bool {
        self.x_lo < o.x_hi && o.x_lo < self.x_hi && self.y_lo < o.y_hi && o.y_lo < self.y_hi
    }

    pub fn contains_rect(&self, o: &Rect) -> bool {
        self.x_lo <= o.x_lo && o.x_hi <= self.x_hi && self.y_lo <= o.y_lo && o.y_hi <= self.y_hi
    }

    fn corners(&self) -> [(u32, u32); 4] {
        [
            (self.x_lo, self.y_lo),
            (self.x_hi, self.y_lo),
            (self.x_hi, self.y_hi),
            (self.x_lo, self.y_hi),
        ]
    }
}

impl From<[u32; 4]> for Rect {
    fn from(a: [u32; 4]) -> Self {
        Rect::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Rect> for [u32; 4] {
    fn from(r: Rect) -> Self {
        [r.x_lo, r.y_lo, r.x_hi, r.y_hi]
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.x_lo, self.x_hi, self.y_lo, self.y_hi)
    }
}

/// A concrete tiling of `[0,width] x [0,height]`. Rectangle ids are indices into `rects`.
///
/// Nothing is checked on construction; see [`Drawing::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drawing {
    pub width: u32,
    pub height: u32,
    pub rects: Vec<Rect>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    ZeroSize,
    Degenerate { rect: usize },
    OutOfBounds { rect: usize },
    Overlap { a: usize, b: usize },
    /// Area does not add up; `cell` is an uncovered unit cell when one could be located.
    Uncovered { cell: Option<(u32, u32)> },
    FourCorners { x: u32, y: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "no rectangles"),
            Violation::ZeroSize => write!(f, "width and height must be positive"),
            Violation::Degenerate { rect } => write!(f, "rectangle {rect} is degenerate"),
            Violation::OutOfBounds { rect } => write!(f, "rectangle {rect} leaves the bounding box"),
            Violation::Overlap { a, b } => write!(f, "rectangles {a} and {b} overlap"),
            Violation::Uncovered { cell: Some((x, y)) } => {
                write!(f, "cell [{x},{}]x[{y},{}] is not covered", x + 1, y + 1)
            }
            Violation::Uncovered { cell: None } => write!(f, "rectangles do not cover the bounding box"),
            Violation::FourCorners { x, y } => write!(f, "four rectangles meet at ({x},{y})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

const SWEEP_LIMIT: u64 = 1 << 22;

impl Drawing {
    pub fn new(width: u32, height: u32, rects: Vec<Rect>) -> Self {
        Drawing { width, height, rects }
    }

    pub fn unit() -> Self {
        Drawing::new(1, 1, vec![Rect::new(0, 0, 1, 1)])
    }

    /// The size-5 pinwheel on a 3x3 grid; rectangles in order SE, NE, NW, SW, centre.
    pub fn pinwheel() -> Self {
        Drawing::new(
            3,
            3,
            vec![
                Rect::new(2, 0, 3, 2),
                Rect::new(1, 2, 3, 3),
                Rect::new(0, 1, 1, 3),
                Rect::new(0, 0, 2, 1),
                Rect::new(1, 1, 2, 2),
            ],
        )
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        if self.rects.is_empty() {
            v.push(Violation::Empty);
        }
        if self.width == 0 || self.height == 0 {
            v.push(Violation::ZeroSize);
        }
        if !v.is_empty() {
            return ValidationReport { violations: v };
        }
        let mut shape_ok = true;
        for (i, r) in self.rects.iter().enumerate() {
            if r.x_lo >= r.x_hi || r.y_lo >= r.y_hi {
                v.push(Violation::Degenerate { rect: i });
                shape_ok = false;
            } else if r.x_hi > self.width || r.y_hi > self.height {
                v.push(Violation::OutOfBounds { rect: i });
                shape_ok = false;
            }
        }
        if !shape_ok {
            return ValidationReport { violations: v };
        }
        let mut overlap = false;
        for i in 0..self.rects.len() {
            for j in i + 1..self.rects.len() {
                if self.rects[i].overlaps(&self.rects[j]) {
                    v.push(Violation::Overlap { a: i, b: j });
                    overlap = true;
                }
            }
        }
        let total: u64 = self.rects.iter().map(Rect::area).sum();
        let full = u64::from(self.width) * u64::from(self.height);
        if !overlap && total != full {
            v.push(Violation::Uncovered { cell: self.find_uncovered() });
        }
        let mut corners: HashMap<(u32, u32), u8> = HashMap::new();
        for r in &self.rects {
            for (x, y) in r.corners() {
                if x > 0 && x < self.width && y > 0 && y < self.height {
                    *corners.entry((x, y)).or_default() += 1;
                }
            }
        }
        let mut four: Vec<_> = corners.into_iter().filter(|&(_, c)| c >= 4).map(|(p, _)| p).collect();
        four.sort_unstable();
        v.extend(four.into_iter().map(|(x, y)| Violation::FourCorners { x, y }));
        ValidationReport { violations: v }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn find_uncovered(&self) -> Option<(u32, u32)> {
        if u64::from(self.width) * u64::from(self.height) > SWEEP_LIMIT {
            return None;
        }
        let w = self.width as usize;
        let mut covered = vec![false; w * self.height as usize];
        for r in &self.rects {
            for y in r.y_lo..r.y_hi {
                for x in r.x_lo..r.x_hi {
                    covered[y as usize * w + x as usize] = true;
                }
            }
        }
        covered.iter().position(|c| !c).map(|i| ((i % w) as u32, (i / w) as u32))
    }

    /// Index of the rectangle containing the NW corner.
    pub fn nw_rect(&self) -> Option<usize> {
        self.rects.iter().position(|r| r.x_lo == 0 && r.y_hi == self.height)
    }

    /// Every interior grid line carries at least one rectangle side.
    pub fn is_tight(&self) -> bool {
        let mut xs = vec![false; self.width as usize + 1];
        let mut ys = vec![false; self.height as usize + 1];
        for r in &self.rects {
            xs[r.x_lo as usize] = true;
            xs[r.x_hi as usize] = true;
            ys[r.y_lo as usize] = true;
            ys[r.y_hi as usize] = true;
        }
        xs.iter().all(|&b| b) && ys.iter().all(|&b| b)
    }

    /// Drops unused grid lines.
    pub fn tightened(&self) -> Drawing {
        let mut xs: Vec<u32> = self.rects.iter().flat_map(|r| [r.x_lo, r.x_hi]).collect();
        let mut ys: Vec<u32> = self.rects.iter().flat_map(|r| [r.y_lo, r.y_hi]).collect();
        xs.push(0);
        ys.push(0);
        xs.push(self.width);
        ys.push(self.height);
        xs.sort_unstable();
        xs.dedup();
        ys.sort_unstable();
        ys.dedup();
        let rx = |x: u32| xs.binary_search(&x).unwrap() as u32;
        let ry = |y: u32| ys.binary_search(&y).unwrap() as u32;
        Drawing {
            width: xs.len() as u32 - 1,
            height: ys.len() as u32 - 1,
            rects: self
                .rects
                .iter()
                .map(|r| Rect::new(rx(r.x_lo), ry(r.y_lo), rx(r.x_hi), ry(r.y_hi)))
                .collect(),
        }
    }

    fn map_rects(&self, width: u32, height: u32, f: impl Fn(&Rect) -> Rect) -> Drawing {
        Drawing { width, height, rects: self.rects.iter().map(f).collect() }
    }

    /// Quarter turn clockwise: `(x, y) -> (y, W - x)`.
    pub fn rotate_cw(&self) -> Drawing {
        let w = self.width;
        self.map_rects(self.height, w, |r| Rect::new(r.y_lo, w - r.x_hi, r.y_hi, w - r.x_lo))
    }

    pub fn rotate_180(&self) -> Drawing {
        self.rotate_cw().rotate_cw()
    }

    /// Left-right mirror.
    pub fn mirror(&self) -> Drawing {
        let w = self.width;
        self.map_rects(w, self.height, |r| Rect::new(w - r.x_hi, r.y_lo, w - r.x_lo, r.y_hi))
    }

    /// Reflection across the NW-SE diagonal: `(x, y) -> (H - y, W - x)`.
    pub fn reflect_diagonal(&self) -> Drawing {
        let (w, h) = (self.width, self.height);
        self.map_rects(h, w, |r| Rect::new(h - r.y_hi, w - r.x_hi, h - r.y_lo, w - r.x_lo))
    }

    /// The rectangles inside `window`, translated to the origin.
    pub fn restrict(&self, window: Rect) -> Drawing {
        Drawing {
            width: window.width(),
            height: window.height(),
            rects: self
                .rects
                .iter()
                .filter(|r| window.contains_rect(r))
                .map(|r| Rect::new(r.x_lo - window.x_lo, r.y_lo - window.y_lo, r.x_hi - window.x_lo, r.y_hi - window.y_lo))
                .collect(),
        }
    }

    /// Debug rendering, one character cell per unit square, labels cycling through a-z.
    pub fn render_ascii(&self) -> String {
        let (w, h) = (self.width as usize, self.height as usize);
        let mut grid = vec![vec!['?'; w]; h];
        for (i, r) in self.rects.iter().enumerate() {
            let c = (b'a' + (i % 26) as u8) as char;
            for row in grid.iter_mut().take((r.y_hi as usize).min(h)).skip(r.y_lo as usize) {
                for cell in row.iter_mut().take((r.x_hi as usize).min(w)).skip(r.x_lo as usize) {
                    *cell = c;
                }
            }
        }
        let mut s = String::new();
        for row in grid.iter().rev() {
            s.extend(row.iter());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pinwheel() -> Drawing {
        Drawing::pinwheel()
    }

    #[test]
    fn unit_square_is_valid() {
        assert!(Drawing::unit().is_valid());
    }

    #[test]
    fn grid_of_four_reports_crossing() {
        let d = Drawing::new(
            2,
            2,
            vec![Rect::new(0, 0, 1, 1), Rect::new(1, 0, 2, 1), Rect::new(0, 1, 1, 2), Rect::new(1, 1, 2, 2)],
        );
        let rep = d.validate();
        assert_eq!(rep.violations, vec![Violation::FourCorners { x: 1, y: 1 }]);
        assert_eq!(rep.to_string(), "four rectangles meet at (1,1)");
    }

    #[test]
    fn pinwheel_is_valid() {
        let d = pinwheel();
        assert!(d.is_valid());
        // cell sweep: every cell covered exactly once
        let mut cnt = [[0; 3]; 3];
        for r in &d.rects {
            for y in r.y_lo..r.y_hi {
                for x in r.x_lo..r.x_hi {
                    cnt[y as usize][x as usize] += 1;
                }
            }
        }
        assert!(cnt.iter().flatten().all(|&c| c == 1));
    }

    #[test]
    fn gaps_and_overlaps_are_reported() {
        let gap = Drawing::new(2, 1, vec![Rect::new(0, 0, 1, 1)]);
        assert_eq!(gap.validate().violations, vec![Violation::Uncovered { cell: Some((1, 0)) }]);
        let over = Drawing::new(2, 1, vec![Rect::new(0, 0, 2, 1), Rect::new(1, 0, 2, 1)]);
        assert!(matches!(over.validate().violations[0], Violation::Overlap { a: 0, b: 1 }));
        let bad = Drawing::new(2, 1, vec![Rect::new(1, 0, 1, 1)]);
        assert_eq!(bad.validate().violations, vec![Violation::Degenerate { rect: 0 }]);
    }

    #[test]
    fn transforms_keep_validity() {
        let d = pinwheel();
        for t in [d.rotate_cw(), d.mirror(), d.reflect_diagonal(), d.rotate_180()] {
            assert!(t.is_valid());
        }
        assert_eq!(d.rotate_cw().rotate_cw().rotate_cw().rotate_cw(), d);
        assert_eq!(d.reflect_diagonal().reflect_diagonal(), d);
    }

    #[test]
    fn json_shape() {
        let d = Drawing::new(2, 1, vec![Rect::new(0, 0, 1, 1), Rect::new(1, 0, 2, 1)]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"width":2,"height":1,"rects":[[0,0,1,1],[1,0,2,1]]}"#);
        let back: Drawing = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn tighten_drops_unused_lines() {
        let d = Drawing::new(4, 2, vec![Rect::new(0, 0, 3, 2), Rect::new(3, 0, 4, 2)]);
        assert!(!d.is_tight());
        let t = d.tightened();
        assert_eq!(t, Drawing::new(2, 1, vec![Rect::new(0, 0, 1, 1), Rect::new(1, 0, 2, 1)]));
    }
}
