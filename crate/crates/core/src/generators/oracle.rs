//! Brute-force enumeration of all rectangulation classes of a given size.
//!
//! A tight drawing of `n` rectangles has exactly `n - 1` interior grid lines, so the search
//! runs over grids `w x h` with `w + h = n + 1`. Rectangles are placed at the lowest row,
//! leftmost empty cell. Shards (one per grid shape) run in parallel and are merged in
//! increasing `w`, keeping the first drawing seen for each code.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{canonicalize, CanonicalCode, Drawing, Rect};

pub const DEFAULT_CEILING: usize = 8;

/// One class with a representative drawing.
#[derive(Clone, Debug)]
pub struct ClassRep {
    pub code: CanonicalCode,
    pub drawing: Drawing,
}

/// All classes of size `n`, sorted by code.
pub fn all_rectangulations(n: usize) -> Result<Vec<ClassRep>> {
    all_rectangulations_bounded(n, DEFAULT_CEILING)
}

pub fn all_rectangulations_bounded(n: usize, ceiling: usize) -> Result<Vec<ClassRep>> {
    if n == 0 || n > ceiling || n > 11 {
        return Err(Error::BoundExceeded { n, ceiling: ceiling.min(11) });
    }
    let shards: Vec<BTreeMap<CanonicalCode, Drawing>> = (1..=n as u32)
        .into_par_iter()
        .map(|w| {
            let h = n as u32 + 1 - w;
            let mut seen = BTreeMap::new();
            tilings(w, h, n, &mut |d| {
                seen.entry(canonicalize(&d)).or_insert(d);
            });
            seen
        })
        .collect();
    let mut merged = BTreeMap::new();
    for shard in shards {
        for (code, d) in shard {
            merged.entry(code).or_insert(d);
        }
    }
    Ok(merged.into_iter().map(|(code, drawing)| ClassRep { code, drawing }).collect())
}

/// Every valid tight tiling of a `w x h` grid by exactly `n` rectangles.
pub fn tilings(w: u32, h: u32, n: usize, emit: &mut dyn FnMut(Drawing)) {
    assert!(w * h <= 64, "grid too large for bitmask search");
    let cells = (w * h) as usize;
    let full: u64 = if cells == 64 { u64::MAX } else { (1u64 << cells) - 1 };
    let mut s = Search { w, h, n, full, rects: Vec::with_capacity(n), emit };
    s.go(0);
}

struct Search<'a> {
    w: u32,
    h: u32,
    n: usize,
    full: u64,
    rects: Vec<Rect>,
    emit: &'a mut dyn FnMut(Drawing),
}

impl Search<'_> {
    fn go(&mut self, occ: u64) {
        if occ == self.full {
            if self.rects.len() == self.n {
                self.finish();
            }
            return;
        }
        let placed = self.rects.len();
        if placed == self.n {
            return;
        }
        let empty = (self.full & !occ).count_ones() as usize;
        if empty < self.n - placed {
            return;
        }
        let idx = occ.trailing_ones();
        let (x0, y0) = (idx % self.w, idx / self.w);
        let w = self.w;
        let mut row_mask = 0u64;
        for dw in 1..=(w - x0) {
            let bit = 1u64 << (y0 * w + x0 + dw - 1);
            if occ & bit != 0 {
                break;
            }
            row_mask |= bit;
            let mut mask = 0u64;
            for dh in 1..=(self.h - y0) {
                let row = row_mask << ((dh - 1) * w);
                if occ & row != 0 {
                    break;
                }
                mask |= row;
                self.rects.push(Rect::new(x0, y0, x0 + dw, y0 + dh));
                self.go(occ | mask);
                self.rects.pop();
            }
        }
    }

    fn finish(&mut self) {
        let (w, h) = (self.w, self.h);
        let mut xs = vec![false; w as usize + 1];
        let mut ys = vec![false; h as usize + 1];
        for r in &self.rects {
            xs[r.x_lo as usize] = true;
            ys[r.y_lo as usize] = true;
        }
        if !xs[1..w as usize].iter().all(|&b| b) || !ys[1..h as usize].iter().all(|&b| b) {
            return;
        }
        // four corners at an interior point: count corners per grid point
        let stride = w as usize + 1;
        let mut cnt = [0u8; 256];
        let mut big;
        let counts: &mut [u8] = if stride * (h as usize + 1) <= 256 {
            &mut cnt[..]
        } else {
            big = vec![0u8; stride * (h as usize + 1)];
            &mut big[..]
        };
        for r in &self.rects {
            for (x, y) in [(r.x_lo, r.y_lo), (r.x_hi, r.y_lo), (r.x_lo, r.y_hi), (r.x_hi, r.y_hi)] {
                let c = &mut counts[y as usize * stride + x as usize];
                *c += 1;
                if *c == 4 && x > 0 && x < w && y > 0 && y < h {
                    return;
                }
            }
        }
        (self.emit)(Drawing::new(w, h, self.rects.clone()));
    }
}
