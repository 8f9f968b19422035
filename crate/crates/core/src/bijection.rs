//! The bijection between guillotine diagonal rectangulations and separable permutations.
//!
//! A drawing is cut into slabs along all of its full-length parallel cuts at once; the
//! slab images are combined into a direct or skew sum depending on the cut direction.

use crate::error::{Error, Result};
use crate::geometry::{Axis, Drawing, Rect, SegmentStructure};
use crate::patterns::{self, PatternSet};
use crate::perm::{decompose, Permutation, SeparableTree, VincularPattern};
use crate::table::TableRow;

/// How cuts turn into sums. Vertical slabs are always read left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Convention {
    /// Vertical cuts give direct sums (and horizontal cuts skew sums), or the other way round.
    pub vertical_direct: bool,
    /// Horizontal slabs are read top to bottom, or bottom to top.
    pub top_first: bool,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention { vertical_direct: true, top_first: true },
        Convention { vertical_direct: true, top_first: false },
        Convention { vertical_direct: false, top_first: true },
        Convention { vertical_direct: false, top_first: false },
    ];

    /// The convention used by [`delta`] and [`delta_inv`]; [`calibrate`] re-derives it.
    pub const FROZEN: Convention = Convention { vertical_direct: true, top_first: true };
}

/// Slabs between consecutive parallel cuts, in reading order, plus the cut axis.
fn slabs(d: &Drawing, top_first: bool) -> Option<(Axis, Vec<Drawing>)> {
    let st = SegmentStructure::build(d);
    let mut v: Vec<u32> = st.cuts().filter(|(_, s)| s.axis == Axis::Vertical).map(|(_, s)| s.coord).collect();
    let axis = if v.is_empty() {
        v = st.cuts().map(|(_, s)| s.coord).collect();
        Axis::Horizontal
    } else {
        Axis::Vertical
    };
    if v.is_empty() {
        return None;
    }
    v.sort_unstable();
    let (w, h) = (d.width, d.height);
    let end = if axis == Axis::Vertical { w } else { h };
    let mut bounds = vec![0];
    bounds.extend(v);
    bounds.push(end);
    let mut out: Vec<Drawing> = bounds
        .windows(2)
        .map(|b| match axis {
            Axis::Vertical => d.restrict(Rect::new(b[0], 0, b[1], h)),
            Axis::Horizontal => d.restrict(Rect::new(0, b[0], w, b[1])),
        })
        .collect();
    if axis == Axis::Horizontal && top_first {
        out.reverse();
    }
    Some((axis, out))
}

fn delta_rec(d: &Drawing, conv: Convention) -> Result<Vec<u8>> {
    if d.rects.len() == 1 {
        return Ok(vec![1]);
    }
    let (axis, parts) = slabs(d, conv.top_first).ok_or(Error::NotGuillotine)?;
    let images = parts.iter().map(|p| delta_rec(p, conv)).collect::<Result<Vec<_>>>()?;
    let direct = (axis == Axis::Vertical) == conv.vertical_direct;
    let n: usize = images.iter().map(Vec::len).sum();
    let mut out = Vec::with_capacity(n);
    let mut base = if direct { 0 } else { n as u8 };
    for img in &images {
        if !direct {
            base -= img.len() as u8;
        }
        out.extend(img.iter().map(|&v| v + base));
        if direct {
            base += img.len() as u8;
        }
    }
    Ok(out)
}

/// Image of a guillotine diagonal drawing.
pub fn delta(d: &Drawing) -> Result<Permutation> {
    delta_with(d, Convention::FROZEN)
}

pub fn delta_with(d: &Drawing, conv: Convention) -> Result<Permutation> {
    let st = SegmentStructure::new(d)?;
    if !patterns::is_diagonal(&st) {
        return Err(Error::NotDiagonal);
    }
    Ok(Permutation::from_vec_unchecked(delta_rec(d, conv)?))
}

/// Unchecked variant for drawings already known to be guillotine and diagonal.
pub(crate) fn delta_fast(d: &Drawing, conv: Convention) -> Result<Vec<u8>> {
    delta_rec(d, conv)
}

/// Tight drawing of a separable permutation: [`diagonal_layout`] with unused lines removed.
pub fn delta_inv(p: &Permutation) -> Result<Drawing> {
    Ok(diagonal_layout(&decompose(p)?).tightened())
}

/// Layout on an `n x n` grid in which the NW-SE diagonal crosses the i-th rectangle (in
/// permutation position order) along the unit step from `(i-1, n-i+1)` to `(i, n-i)`.
pub fn diagonal_layout(t: &SeparableTree) -> Drawing {
    let n = t.size() as u32;
    let mut rects = Vec::with_capacity(n as usize);
    place(t, 0, n, &mut |r| rects.push(r));
    Drawing::new(n, n, rects)
}

/// Lays out `t` on diagonal positions `a..a+size` of an `n x n` grid; the block's own frame is
/// `[x0,x1] x [y0,y1]` with interior lines offset so they cross the diagonal inside the block.
fn place(t: &SeparableTree, a: u32, n: u32, emit: &mut dyn FnMut(Rect)) {
    fn go(t: &SeparableTree, a: u32, n: u32, frame: Rect, emit: &mut dyn FnMut(Rect)) {
        match t {
            SeparableTree::Leaf => emit(frame),
            SeparableTree::Ascending(children) => {
                // left to right; slabs keep the frame's top and bottom
                let mut pos = a;
                for c in children {
                    let m = c.size() as u32;
                    let x_lo = if pos == a { frame.x_lo } else { pos };
                    let x_hi = if pos + m == a + t.size() as u32 { frame.x_hi } else { pos + m };
                    go(c, pos, n, Rect::new(x_lo, frame.y_lo, x_hi, frame.y_hi), emit);
                    pos += m;
                }
            }
            SeparableTree::Descending(children) => {
                // top to bottom; slabs keep the frame's left and right
                let mut pos = a;
                for c in children {
                    let m = c.size() as u32;
                    let y_hi = if pos == a { frame.y_hi } else { n - pos };
                    let y_lo = if pos + m == a + t.size() as u32 { frame.y_lo } else { n - pos - m };
                    go(c, pos, n, Rect::new(frame.x_lo, y_lo, frame.x_hi, y_hi), emit);
                    pos += m;
                }
            }
        }
    }
    go(t, a, n, Rect::new(0, 0, n, n), emit)
}

/// Depth of the slab decomposition (0 for a single rectangle).
pub fn cut_depth(d: &Drawing) -> Result<usize> {
    if d.rects.len() == 1 {
        return Ok(0);
    }
    let (_, parts) = slabs(d, true).ok_or(Error::NotGuillotine)?;
    let mut m = 0;
    for p in &parts {
        m = m.max(cut_depth(p)?);
    }
    Ok(1 + m)
}

/// A drawing whose geometric and permutation-side avoidance disagree.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub drawing: Drawing,
    pub perm: Permutation,
    pub avoids_geometric: bool,
    pub avoids_perm: bool,
}

/// Checks, over the given guillotine diagonal drawings, that avoiding `geo` matches
/// the image avoiding `perm_patterns`.
pub fn check_translation_on<'a>(
    drawings: impl IntoIterator<Item = &'a Drawing>,
    geo: PatternSet,
    perm_patterns: &[VincularPattern],
    conv: Convention,
) -> Result<Option<Counterexample>> {
    for d in drawings {
        let st = SegmentStructure::build(d);
        let a = patterns::avoids(&st, geo);
        let p = Permutation::from_vec_unchecked(delta_fast(d, conv)?);
        let b = perm_patterns.iter().all(|q| !q.occurs_in(p.values()));
        if a != b {
            return Ok(Some(Counterexample { drawing: d.clone(), perm: p, avoids_geometric: a, avoids_perm: b }));
        }
    }
    Ok(None)
}

/// Guillotine diagonal classes of size `n` from the exhaustive oracle.
pub fn guillotine_diagonal_classes(n: usize) -> Result<Vec<Drawing>> {
    Ok(crate::generators::oracle::all_rectangulations(n)?
        .into_iter()
        .map(|c| c.drawing)
        .filter(|d| patterns::is_guillotine(d) && patterns::is_diagonal(&SegmentStructure::build(d)))
        .collect())
}

/// Row translation check for size `n` on the exhaustive class list.
pub fn check_translation(row: &TableRow, n: usize) -> Result<Option<Counterexample>> {
    let classes = guillotine_diagonal_classes(n)?;
    check_translation_on(&classes, row.avoid(), &row.vincular(), Convention::FROZEN)
}

/// Does `conv` make the map injective with image all separable permutations, on the given classes of one size?
pub fn is_bijective_on(classes: &[Drawing], conv: Convention) -> Result<bool> {
    let n = match classes.first() {
        Some(d) => d.rects.len(),
        None => return Ok(true),
    };
    let mut images = classes.iter().map(|d| delta_fast(d, conv)).collect::<Result<Vec<_>>>()?;
    images.sort_unstable();
    let expected: Vec<Vec<u8>> = crate::perm::generate_separable(n).into_iter().map(|p| p.values().to_vec()).collect();
    Ok(images == expected)
}

/// The conventions under which the translations P5 vs 2[14]3 and P7 vs 21354 and
/// bijectivity hold for all sizes up to `max_n`.
pub fn translation_conventions(max_n: usize) -> Result<Vec<Convention>> {
    let p5: PatternSet = "5".parse()?;
    let p7: PatternSet = "7".parse()?;
    let q5: Vec<VincularPattern> = vec!["2[14]3".parse()?];
    let q7: Vec<VincularPattern> = vec!["21354".parse()?];
    let classes: Vec<Vec<Drawing>> = (1..=max_n).map(guillotine_diagonal_classes).collect::<Result<_>>()?;
    let mut ok = Vec::new();
    for conv in Convention::ALL {
        let mut good = true;
        for cls in &classes {
            if !is_bijective_on(cls, conv)?
                || check_translation_on(cls, p5, &q5, conv)?.is_some()
                || check_translation_on(cls, p7, &q7, conv)?.is_some()
            {
                good = false;
                break;
            }
        }
        if good {
            ok.push(conv);
        }
    }
    Ok(ok)
}

/// Does `conv` read positions in the order the diagonal meets rectangles, i.e. invert
/// [`diagonal_layout`] on all separable permutations of sizes up to `max_n`?
pub fn follows_diagonal(max_n: usize, conv: Convention) -> Result<bool> {
    for n in 1..=max_n {
        for p in crate::perm::generate_separable(n) {
            let d = diagonal_layout(&decompose(&p)?);
            if delta_fast(&d, conv)? != p.values() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Translation-compatible conventions that also follow the diagonal order.
pub fn admissible_conventions(max_n: usize) -> Result<Vec<Convention>> {
    let mut out = Vec::new();
    for c in translation_conventions(max_n)? {
        if follows_diagonal(max_n, c)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// The unique admissible convention.
pub fn calibrate(max_n: usize) -> Result<Convention> {
    match admissible_conventions(max_n)?.as_slice() {
        [c] => Ok(*c),
        other => Err(Error::Parse(format!("expected one admissible convention, found {}", other.len()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::canonicalize;
    use crate::perm::generate_separable;

    #[test]
    fn size_one_and_two() {
        assert_eq!(delta(&Drawing::unit()).unwrap().to_string(), "1");
        let v = Drawing::new(2, 1, vec![Rect::new(0, 0, 1, 1), Rect::new(1, 0, 2, 1)]);
        let h = Drawing::new(1, 2, vec![Rect::new(0, 0, 1, 1), Rect::new(0, 1, 1, 2)]);
        assert_eq!(delta(&v).unwrap().to_string(), "12");
        assert_eq!(delta(&h).unwrap().to_string(), "21");
    }

    #[test]
    fn rejects_non_guillotine_and_non_diagonal() {
        assert!(matches!(delta(&Drawing::pinwheel()), Err(Error::NotGuillotine)));
        let d = Drawing::new(
            2,
            3,
            vec![Rect::new(0, 0, 1, 1), Rect::new(0, 1, 1, 3), Rect::new(1, 0, 2, 2), Rect::new(1, 2, 2, 3)],
        );
        assert!(matches!(delta(&d), Err(Error::NotDiagonal)));
    }

    #[test]
    fn identity_is_a_row_of_strips() {
        for k in 1..=6 {
            let d = delta_inv(&Permutation::identity(k)).unwrap();
            assert_eq!((d.width, d.height), (k as u32, 1));
        }
    }

    #[test]
    fn round_trip_small() {
        for n in 1..=7 {
            for p in generate_separable(n) {
                let d = delta_inv(&p).unwrap();
                assert!(d.is_valid(), "{p}");
                assert!(d.is_tight(), "{p}");
                assert_eq!(delta(&d).unwrap(), p);
            }
        }
    }

    #[test]
    fn staircase_meets_the_diagonal() {
        // every rectangle is crossed by the segment from (0,H) to (W,0)
        for p in generate_separable(6) {
            let d = diagonal_layout(&decompose(&p).unwrap());
            assert!(d.is_valid(), "{p}");
            assert_eq!(canonicalize(&d), canonicalize(&delta_inv(&p).unwrap()));
            let (w, h) = (d.width as i64, d.height as i64);
            for r in &d.rects {
                // line x/W + y/H = 1; the open rectangle meets it iff its corners straddle it
                let f = |x: u32, y: u32| x as i64 * h + y as i64 * w - w * h;
                assert!(f(r.x_lo, r.y_lo) < 0 && f(r.x_hi, r.y_hi) > 0, "{p}");
            }
        }
    }

    #[test]
    fn rotation_matches_reverse_complement() {
        for p in generate_separable(6) {
            let d = delta_inv(&p).unwrap();
            let q = delta(&d.rotate_180()).unwrap();
            assert_eq!(q, p.reverse().complement());
        }
    }

    #[test]
    fn cut_depth_matches_tree_depth() {
        for p in generate_separable(7) {
            let d = delta_inv(&p).unwrap();
            assert_eq!(cut_depth(&d).unwrap(), decompose(&p).unwrap().depth());
        }
    }

    #[test]
    fn calibration_is_unique_and_frozen() {
        // the two translations pin the cut types but not the order of horizontal slabs
        let by_translation = translation_conventions(6).unwrap();
        assert_eq!(by_translation, vec![Convention::FROZEN, Convention { vertical_direct: true, top_first: false }]);
        assert_eq!(admissible_conventions(6).unwrap(), vec![Convention::FROZEN]);
    }
}
