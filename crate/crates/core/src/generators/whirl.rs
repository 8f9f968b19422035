//! Simple whirls: signatures, the generating tree, the geometric builder and the
//! region decomposition by alternating paths.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Axis, Drawing, Rect, SegId, SegmentStructure};
use crate::patterns::{self, PatternId, PatternSet, Turn, Windmill};

/// `(s1, s2, s3, s4)`: for each side S_i (E, S, W, N) the number of rectangles of
/// region R_{i-1} touching it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature(pub [u32; 4]);

impl Signature {
    pub const ROOT: Signature = Signature([1, 1, 1, 1]);
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Rule `rule` (1..=4) choosing `value` for component `rule`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub rule: u8,
    pub value: u32,
}

/// Children in rule order, values increasing.
///
/// 1. (a,b,1,1) -> (1,b+1,1,1)
/// 2. (1,b,c,1) -> (1,[1..b],c+1,1)
/// 3. (1,b,c,d) -> (1,b,[1..c],d+1)
/// 4. (a,b,c,d) -> (a+1,b,c,[1..d])
pub fn children(sig: Signature) -> Vec<(Step, Signature)> {
    let [a, b, c, d] = sig.0;
    let mut out = Vec::new();
    if c == 1 && d == 1 {
        out.push((Step { rule: 1, value: 1 }, Signature([1, b + 1, 1, 1])));
    }
    if a == 1 && d == 1 {
        out.extend((1..=b).map(|j| (Step { rule: 2, value: j }, Signature([1, j, c + 1, 1]))));
    }
    if a == 1 {
        out.extend((1..=c).map(|j| (Step { rule: 3, value: j }, Signature([1, b, j, d + 1]))));
    }
    out.extend((1..=d).map(|j| (Step { rule: 4, value: j }, Signature([a + 1, b, c, j]))));
    out
}

/// Signature multisets of levels 0..=depth.
pub fn whirl_tree(depth: usize) -> Vec<BTreeMap<Signature, u64>> {
    let mut levels = vec![BTreeMap::from([(Signature::ROOT, 1u64)])];
    for _ in 0..depth {
        let mut next = BTreeMap::new();
        for (&s, &k) in levels.last().unwrap() {
            for (_, c) in children(s) {
                *next.entry(c).or_insert(0) += k;
            }
        }
        levels.push(next);
    }
    levels
}

pub fn level_sizes(depth: usize) -> Vec<u64> {
    whirl_tree(depth).iter().map(|l| l.values().sum()).collect()
}

/// Every root-to-node path of length `depth`, with the node's signature.
pub fn paths(depth: usize) -> Vec<(Vec<Step>, Signature)> {
    let mut cur = vec![(Vec::new(), Signature::ROOT)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (p, s) in &cur {
            for (st, c) in children(*s) {
                let mut q = p.clone();
                q.push(st);
                next.push((q, c));
            }
        }
        cur = next;
    }
    cur
}

/// A simple whirl in normalized embedding with region tags (0 interior, 1..=4 regions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedWhirl {
    pub drawing: Drawing,
    pub region: Vec<u8>,
}

impl TaggedWhirl {
    pub fn pinwheel() -> Self {
        TaggedWhirl { drawing: Drawing::pinwheel(), region: vec![1, 4, 3, 2, 0] }
    }

    /// Signature read off the tags.
    pub fn signature(&self) -> Signature {
        signature_from_regions(&self.drawing, &self.region)
    }

    /// Rectangles of `region` touching the box along `touch`, ordered by `key`.
    fn touching(&self, region: u8, touch: impl Fn(&Rect) -> bool, key: impl Fn(&Rect) -> i64) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.drawing.rects.len())
            .filter(|&i| self.region[i] == region && touch(&self.drawing.rects[i]))
            .collect();
        v.sort_by_key(|&i| key(&self.drawing.rects[i]));
        v
    }

    /// Adds the new corner rectangle of rule `step.rule`.
    pub fn apply(&mut self, step: Step) -> Result<()> {
        let (w, h) = (self.drawing.width, self.drawing.height);
        let k = step.value as usize;
        let bad = |what: &str| Error::InvalidPath(format!("rule {} value {}: {what}", step.rule, step.value));
        match step.rule {
            4 => {
                let tops = self.touching(3, |r| r.y_hi == h, |r| r.x_lo as i64);
                check_strips(&tops, &self.drawing.rects, |r, j| r.x_lo == j && r.x_hi == j + 1).map_err(|_| bad("northern R3 not unit columns"))?;
                if k == 0 || k > tops.len() {
                    return Err(bad("out of range"));
                }
                for &i in &tops[..k] {
                    self.drawing.rects[i].y_hi = h + 1;
                }
                self.push(Rect::new(k as u32, h, w, h + 1), 4);
                self.drawing.height += 1;
            }
            1 => {
                let east = self.touching(4, |r| r.x_hi == w, |r| -(r.y_hi as i64));
                check_strips(&east, &self.drawing.rects, |r, j| r.y_hi == h - j && r.y_lo + 1 == r.y_hi).map_err(|_| bad("eastern R4 not unit rows"))?;
                if k == 0 || k > east.len() {
                    return Err(bad("out of range"));
                }
                for &i in &east[..k] {
                    self.drawing.rects[i].x_hi = w + 1;
                }
                self.push(Rect::new(w, 0, w + 1, h - k as u32), 1);
                self.drawing.width += 1;
            }
            2 => {
                let south = self.touching(1, |r| r.y_lo == 0, |r| -(r.x_hi as i64));
                check_strips(&south, &self.drawing.rects, |r, j| r.x_hi == w - j && r.x_lo + 1 == r.x_hi).map_err(|_| bad("southern R1 not unit columns"))?;
                if k == 0 || k > south.len() {
                    return Err(bad("out of range"));
                }
                for r in &mut self.drawing.rects {
                    r.y_lo += 1;
                    r.y_hi += 1;
                }
                for &i in &south[..k] {
                    self.drawing.rects[i].y_lo = 0;
                }
                self.push(Rect::new(0, 0, w - k as u32, 1), 2);
                self.drawing.height += 1;
            }
            3 => {
                let west = self.touching(2, |r| r.x_lo == 0, |r| r.y_lo as i64);
                check_strips(&west, &self.drawing.rects, |r, j| r.y_lo == j && r.y_hi == j + 1).map_err(|_| bad("western R2 not unit rows"))?;
                if k == 0 || k > west.len() {
                    return Err(bad("out of range"));
                }
                for r in &mut self.drawing.rects {
                    r.x_lo += 1;
                    r.x_hi += 1;
                }
                for &i in &west[..k] {
                    self.drawing.rects[i].x_lo = 0;
                }
                self.push(Rect::new(0, k as u32, 1, h), 3);
                self.drawing.width += 1;
            }
            r => return Err(Error::InvalidPath(format!("no rule {r}"))),
        }
        Ok(())
    }

    fn push(&mut self, r: Rect, region: u8) {
        self.drawing.rects.push(r);
        self.region.push(region);
    }
}

fn check_strips(ids: &[usize], rects: &[Rect], ok: impl Fn(&Rect, u32) -> bool) -> std::result::Result<(), ()> {
    if ids.iter().enumerate().all(|(j, &i)| ok(&rects[i], j as u32)) {
        Ok(())
    } else {
        Err(())
    }
}

fn signature_from_regions(d: &Drawing, region: &[u8]) -> Signature {
    let (w, h) = (d.width, d.height);
    let count = |reg: u8, f: &dyn Fn(&Rect) -> bool| d.rects.iter().zip(region).filter(|(r, &g)| g == reg && f(r)).count() as u32;
    Signature([
        count(4, &|r| r.x_hi == w),
        count(1, &|r| r.y_lo == 0),
        count(2, &|r| r.x_lo == 0),
        count(3, &|r| r.y_hi == h),
    ])
}

/// Follows a root-to-node path, checking each step against the tree rules.
pub fn build_tagged(path: &[Step]) -> Result<TaggedWhirl> {
    let mut t = TaggedWhirl::pinwheel();
    let mut sig = Signature::ROOT;
    for (i, &step) in path.iter().enumerate() {
        let next = children(sig)
            .into_iter()
            .find(|(s, _)| *s == step)
            .ok_or_else(|| Error::InvalidPath(format!("step {i} ({step:?}) does not apply to {sig}")))?
            .1;
        t.apply(step)?;
        sig = next;
    }
    debug_assert_eq!(t.signature(), sig);
    Ok(t)
}

pub fn build_simple_whirl(path: &[Step]) -> Result<Drawing> {
    Ok(build_tagged(path)?.drawing)
}

/// Vortex: avoids everything except P2.
pub fn vortex_set() -> PatternSet {
    PatternSet::ALL.minus(PatternSet::from_ids([PatternId::P2]))
}

pub fn is_vortex(st: &SegmentStructure) -> bool {
    patterns::avoids(st, vortex_set())
}

pub fn is_whirl(st: &SegmentStructure) -> bool {
    is_vortex(st) && patterns::contains(st, PatternId::P2)
}

/// A rectangle spanning the box left to right or bottom to top.
pub fn spanning_rect(d: &Drawing) -> Option<usize> {
    d.rects.iter().position(|r| (r.x_lo == 0 && r.x_hi == d.width) || (r.y_lo == 0 && r.y_hi == d.height))
}

/// Definition-level test: non-peelable whirl with one windmill whose interior is one rectangle.
pub fn is_simple_whirl(d: &Drawing) -> bool {
    let st = SegmentStructure::build(d);
    if !is_whirl(&st) || spanning_rect(d).is_some() {
        return false;
    }
    let ws = patterns::windmills(&st);
    ws.len() == 1 && d.rects.contains(&ws[0].interior)
}

/// Region of every rectangle (0 for the windmill interior), from the four alternating paths.
pub fn regions(d: &Drawing) -> Result<Vec<u8>> {
    let st = SegmentStructure::new(d)?;
    let ws = patterns::windmills(&st);
    if ws.len() != 1 || ws[0].turn != Turn::CounterClockwise {
        return Err(Error::RegionDecomposition(format!("expected one P2 windmill, found {}", ws.len())));
    }
    let w: &Windmill = &ws[0];
    let Rect { x_lo: xl, y_lo: yb, x_hi: xr, y_hi: yt } = w.interior;
    let (ww, hh) = (d.width, d.height);
    let [sr, st_top, sl, sb] = w.segs;
    // each path alternates along segments until it lands on the boundary
    let se = walk(&st, sr, [Dir::Down, Dir::Right]);
    let ne = walk(&st, st_top, [Dir::Right, Dir::Up]);
    let nw = walk(&st, sl, [Dir::Up, Dir::Left]);
    let sw = walk(&st, sb, [Dir::Left, Dir::Down]);
    let end = |p: &[(u32, u32)], s: (u32, u32)| p.last().copied().unwrap_or(s);
    let poly = |side: [(u32, u32); 2], out: &[(u32, u32)], back: &[(u32, u32)]| {
        let mut p = side.to_vec();
        p.extend_from_slice(out);
        p.extend(arc(ww, hh, end(out, side[1]), end(back, side[0])));
        p.extend(back.iter().rev());
        p
    };
    let polys = [
        poly([(xr, yb), (xr, yt)], &ne, &se),
        poly([(xl, yb), (xr, yb)], &se, &sw),
        poly([(xl, yt), (xl, yb)], &sw, &nw),
        poly([(xr, yt), (xl, yt)], &nw, &ne),
    ];
    let mut out = Vec::with_capacity(d.rects.len());
    for (i, r) in d.rects.iter().enumerate() {
        if *r == w.interior {
            out.push(0);
            continue;
        }
        let c = (r.x_lo, r.y_lo);
        let hits: Vec<u8> = (0..4).filter(|&k| inside(&polys[k], c)).map(|k| k as u8 + 1).collect();
        match hits.as_slice() {
            [g] => out.push(*g),
            _ => return Err(Error::RegionDecomposition(format!("rectangle {i} {r} lies in regions {hits:?}"))),
        }
    }
    // side conditions: R1/R3 rectangles have top and bottom on the region outline, R2/R4 left and right
    for (i, r) in d.rects.iter().enumerate() {
        if out[i] == 0 {
            continue;
        }
        let pg = &polys[out[i] as usize - 1];
        let edges: Vec<_> = (0..pg.len()).map(|k| (pg[k], pg[(k + 1) % pg.len()])).collect();
        let ok = match out[i] {
            1 | 3 => covered(&edges, r.y_hi, r.x_lo, r.x_hi, false) && covered(&edges, r.y_lo, r.x_lo, r.x_hi, false),
            _ => covered(&edges, r.x_lo, r.y_lo, r.y_hi, true) && covered(&edges, r.x_hi, r.y_lo, r.y_hi, true),
        };
        if !ok {
            return Err(Error::RegionDecomposition(format!("rectangle {i} {r} of region {} misses its outline", out[i])));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Dir {
    Up,
    Down,
    Left,
    Right,
}

/// Walks along `seg` in `dirs[0]`, then along its host in `dirs[1]`, and so on, until a
/// boundary side is hit. Returns the turning points, the last one on the boundary.
fn walk(st: &SegmentStructure, seg: SegId, dirs: [Dir; 2]) -> Vec<(u32, u32)> {
    let mut pts = Vec::new();
    let mut cur = seg;
    for k in 0..=st.segments.len() {
        let s = &st.segments[cur];
        let (np, host) = match (dirs[k % 2], s.axis) {
            (Dir::Down, Axis::Vertical) => ((s.coord, s.lo), s.lo_host),
            (Dir::Up, Axis::Vertical) => ((s.coord, s.hi), s.hi_host),
            (Dir::Left, Axis::Horizontal) => ((s.lo, s.coord), s.lo_host),
            (Dir::Right, Axis::Horizontal) => ((s.hi, s.coord), s.hi_host),
            _ => break,
        };
        pts.push(np);
        match host {
            Some(h) if st.segments[h].boundary.is_none() => cur = h,
            _ => break,
        }
    }
    pts
}

/// Corners of the `w x h` box met going clockwise from boundary point `a` to `b`.
fn arc(w: u32, h: u32, a: (u32, u32), b: (u32, u32)) -> Vec<(u32, u32)> {
    // clockwise perimeter position starting at the NW corner
    let pos = |(x, y): (u32, u32)| -> u64 {
        let (x, y, w, h) = (x as u64, y as u64, w as u64, h as u64);
        if y == h && x < w {
            x
        } else if x == w && y > 0 {
            w + (h - y)
        } else if y == 0 && x > 0 {
            w + h + (w - x)
        } else {
            2 * w + h + y
        }
    };
    let per = 2 * (w as u64 + h as u64);
    let corners = [(0u64, (0, h)), (w as u64, (w, h)), (w as u64 + h as u64, (w, 0)), (2 * w as u64 + h as u64, (0, 0))];
    let (pa, pb) = (pos(a), pos(b));
    let span = (pb + per - pa) % per;
    let mut out: Vec<(u64, (u32, u32))> =
        corners.iter().map(|&(p, c)| ((p + per - pa) % per, c)).filter(|&(o, _)| o > 0 && o < span).collect();
    out.sort_unstable();
    out.into_iter().map(|(_, c)| c).collect()
}

/// Even-odd test for the point a quarter unit inside the SW corner `c`, which is never
/// level with a vertex.
fn inside(poly: &[(u32, u32)], c: (u32, u32)) -> bool {
    let (cx, cy) = (4 * c.0 as i64 + 1, 4 * c.1 as i64 + 1);
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (x1, y1) = (4 * poly[i].0 as i64, 4 * poly[i].1 as i64);
        let (x2, y2) = (4 * poly[(i + 1) % n].0 as i64, 4 * poly[(i + 1) % n].1 as i64);
        // only vertical edges cross the ray towards +x
        if x1 == x2 && x1 > cx && y1.min(y2) < cy && cy < y1.max(y2) {
            inside = !inside;
        }
    }
    inside
}

/// Is `[lo,hi]` at `coord` covered by the union of path edges on that line?
type Edge = ((u32, u32), (u32, u32));

fn covered(edges: &[Edge], coord: u32, lo: u32, hi: u32, vertical: bool) -> bool {
    let mut ivs: Vec<(u32, u32)> = edges
        .iter()
        .filter_map(|&(a, b)| {
            let (c, s, t) = if vertical { (a.0, a.1, b.1) } else { (a.1, a.0, b.0) };
            (c == coord).then(|| (s.min(t), s.max(t)))
        })
        .collect();
    ivs.sort_unstable();
    let mut reach = lo;
    for (s, t) in ivs {
        if s <= reach && t > reach {
            reach = t;
        }
    }
    reach >= hi
}

/// Signature computed geometrically via [`regions`].
pub fn signature_of(d: &Drawing) -> Result<Signature> {
    let reg = regions(d)?;
    Ok(signature_from_regions(d, &reg))
}
