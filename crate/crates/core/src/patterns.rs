//! Geometric patterns P1..P8, cuts, guillotine and diagonal tests.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{Axis, Drawing, Face, Rect, SegId, SegmentStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternId {
    P1 = 1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
}

impl PatternId {
    pub const ALL: [PatternId; 8] = [
        PatternId::P1,
        PatternId::P2,
        PatternId::P3,
        PatternId::P4,
        PatternId::P5,
        PatternId::P6,
        PatternId::P7,
        PatternId::P8,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i.checked_sub(1)?).copied()
    }

    pub fn descriptor(self) -> Descriptor {
        use Descriptor::*;
        match self {
            PatternId::P1 => Windmill(Turn::Clockwise),
            PatternId::P2 => Windmill(Turn::CounterClockwise),
            PatternId::P3 => OppositeStems { axis: Axis::Vertical, low_face_first: true },
            PatternId::P4 => OppositeStems { axis: Axis::Horizontal, low_face_first: true },
            PatternId::P5 => OppositeStems { axis: Axis::Vertical, low_face_first: false },
            PatternId::P6 => OppositeStems { axis: Axis::Horizontal, low_face_first: false },
            PatternId::P7 => FlankedBox { axis: Axis::Vertical },
            PatternId::P8 => FlankedBox { axis: Axis::Horizontal },
        }
    }

    /// Image under reflection across the NW-SE diagonal.
    pub fn diagonal_image(self) -> PatternId {
        use PatternId::*;
        match self {
            P1 => P2,
            P2 => P1,
            P3 => P4,
            P4 => P3,
            P5 => P6,
            P6 => P5,
            P7 => P8,
            P8 => P7,
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.index())
    }
}

/// Circulation of a windmill: each of its four segments ends on the next one going around.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Turn {
    Clockwise,
    CounterClockwise,
}

/// Relational shape of a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Windmill(Turn),
    /// A segment of `axis` carrying stems on both faces; with `low_face_first` a stem on the
    /// low face (west / south) comes before, in increasing coordinate, one on the high face.
    OppositeStems { axis: Axis, low_face_first: bool },
    /// A box bounded by two segments of `axis` and two perpendicular segments, the low side
    /// carrying a stem on its outer (low) face and the high side one on its outer (high) face.
    FlankedBox { axis: Axis },
}

/// Set of pattern ids, written as a digit string such as "12345".
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSet(u8);

impl PatternSet {
    pub const EMPTY: PatternSet = PatternSet(0);
    pub const ALL: PatternSet = PatternSet(0xff);
    /// Guillotine and diagonal: P1..P4.
    pub const BASE: PatternSet = PatternSet(0x0f);

    pub fn from_ids(ids: impl IntoIterator<Item = PatternId>) -> Self {
        ids.into_iter().fold(PatternSet(0), |s, p| s.with(p))
    }

    pub fn with(self, p: PatternId) -> Self {
        PatternSet(self.0 | 1 << (p.index() - 1))
    }

    pub fn contains(self, p: PatternId) -> bool {
        self.0 & (1 << (p.index() - 1)) != 0
    }

    pub fn is_superset(self, o: PatternSet) -> bool {
        self.0 & o.0 == o.0
    }

    pub fn is_disjoint(self, o: PatternSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn union(self, o: PatternSet) -> Self {
        PatternSet(self.0 | o.0)
    }

    pub fn minus(self, o: PatternSet) -> Self {
        PatternSet(self.0 & !o.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = PatternId> {
        PatternId::ALL.into_iter().filter(move |&p| self.contains(p))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn diagonal_image(self) -> Self {
        Self::from_ids(self.iter().map(PatternId::diagonal_image))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.iter() {
            write!(f, "{}", p.index())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternSet({self})")
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut set = PatternSet::EMPTY;
        for c in s.trim().chars() {
            let p = c
                .to_digit(10)
                .and_then(|d| PatternId::from_index(d as usize))
                .ok_or_else(|| Error::Parse(format!("bad pattern digit {c:?} in {s:?}")))?;
            if set.contains(p) {
                return Err(Error::Parse(format!("repeated pattern digit {c:?} in {s:?}")));
            }
            set = set.with(p);
        }
        Ok(set)
    }
}

/// An occurrence of some pattern: the participating segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub pattern: PatternId,
    pub segments: Vec<SegId>,
}

/// Windmill found in a segment structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Windmill {
    pub turn: Turn,
    /// Right, top, left, bottom segments.
    pub segs: [SegId; 4],
    pub interior: Rect,
}

/// All windmills, ordered by the id of their right segment.
pub fn windmills(st: &SegmentStructure) -> Vec<Windmill> {
    let seg = &st.segments;
    let internal = |i: Option<SegId>| i.filter(|&i| seg[i].is_internal());
    let mut out = Vec::new();
    for (r, s) in st.internal() {
        if s.axis != Axis::Vertical {
            continue;
        }
        // counterclockwise: up into top, left into left, down into bottom, right into right
        if let Some(t) = internal(s.hi_host) {
            if let Some(l) = internal(seg[t].lo_host) {
                if let Some(b) = internal(seg[l].lo_host) {
                    if seg[b].hi_host == Some(r) {
                        out.push(Windmill {
                            turn: Turn::CounterClockwise,
                            segs: [r, t, l, b],
                            interior: Rect::new(seg[l].coord, seg[b].coord, s.coord, seg[t].coord),
                        });
                    }
                }
            }
        }
        if let Some(b) = internal(s.lo_host) {
            if let Some(l) = internal(seg[b].lo_host) {
                if let Some(t) = internal(seg[l].hi_host) {
                    if seg[t].hi_host == Some(r) {
                        out.push(Windmill {
                            turn: Turn::Clockwise,
                            segs: [r, t, l, b],
                            interior: Rect::new(seg[l].coord, seg[b].coord, s.coord, seg[t].coord),
                        });
                    }
                }
            }
        }
    }
    out
}

fn opposite_stems(st: &SegmentStructure, axis: Axis, low_face_first: bool) -> Option<Occurrence> {
    let (first, second) = if low_face_first { (Face::Low, Face::High) } else { (Face::High, Face::Low) };
    for (i, s) in st.segments.iter().enumerate() {
        if s.axis != axis {
            continue;
        }
        let mut seen: Option<SegId> = None;
        for j in st.stems_on(i) {
            if j.face == first && seen.is_none() {
                seen = Some(j.stem);
            } else if j.face == second {
                if let Some(a) = seen {
                    return Some(Occurrence { pattern: PatternId::P1, segments: vec![i, a, j.stem] });
                }
            }
        }
    }
    None
}

fn flanked_box(st: &SegmentStructure, axis: Axis) -> Option<Occurrence> {
    let seg = &st.segments;
    let has_stem = |i: SegId, f: Face| st.stems_on(i).any(|j| j.face == f);
    let lows: Vec<SegId> = (0..seg.len()).filter(|&i| seg[i].axis == axis && has_stem(i, Face::Low)).collect();
    let highs: Vec<SegId> = (0..seg.len()).filter(|&i| seg[i].axis == axis && has_stem(i, Face::High)).collect();
    for &a in &lows {
        for &b in &highs {
            if seg[a].coord >= seg[b].coord {
                continue;
            }
            let across: Vec<SegId> =
                (0..seg.len()).filter(|&k| seg[k].axis != axis && seg[k].meets(&seg[a]) && seg[k].meets(&seg[b])).collect();
            if across.len() >= 2 {
                return Some(Occurrence { pattern: PatternId::P7, segments: vec![a, b, across[0], across[1]] });
            }
        }
    }
    None
}

/// Witness for pattern `p`, if present.
pub fn find_occurrence(st: &SegmentStructure, p: PatternId) -> Option<Occurrence> {
    let occ = match p.descriptor() {
        Descriptor::Windmill(turn) => windmills(st).into_iter().find(|w| w.turn == turn).map(|w| Occurrence {
            pattern: p,
            segments: w.segs.to_vec(),
        }),
        Descriptor::OppositeStems { axis, low_face_first } => opposite_stems(st, axis, low_face_first),
        Descriptor::FlankedBox { axis } => flanked_box(st, axis),
    };
    occ.map(|o| Occurrence { pattern: p, ..o })
}

pub fn contains(st: &SegmentStructure, p: PatternId) -> bool {
    find_occurrence(st, p).is_some()
}

/// Set of patterns present.
pub fn profile(st: &SegmentStructure) -> PatternSet {
    let mut set = PatternSet::EMPTY;
    let ws = windmills(st);
    if ws.iter().any(|w| w.turn == Turn::Clockwise) {
        set = set.with(PatternId::P1);
    }
    if ws.iter().any(|w| w.turn == Turn::CounterClockwise) {
        set = set.with(PatternId::P2);
    }
    for p in &PatternId::ALL[2..] {
        if contains(st, *p) {
            set = set.with(*p);
        }
    }
    set
}

pub fn avoids(st: &SegmentStructure, ps: PatternSet) -> bool {
    ps.iter().all(|p| !contains(st, p))
}

/// Leftmost vertical cut, else bottom-most horizontal cut.
pub fn find_cut(st: &SegmentStructure) -> Option<SegId> {
    let cuts: Vec<(SegId, &crate::geometry::Segment)> = st.cuts().collect();
    let pick = |axis| cuts.iter().filter(|(_, s)| s.axis == axis).min_by_key(|(_, s)| s.coord).map(|&(i, _)| i);
    pick(Axis::Vertical).or_else(|| pick(Axis::Horizontal))
}

/// The two sub-drawings on either side of a cut, low side first.
pub fn split_at(d: &Drawing, st: &SegmentStructure, cut: SegId) -> (Drawing, Drawing) {
    let s = &st.segments[cut];
    let (w, h) = (d.width, d.height);
    match s.axis {
        Axis::Vertical => (d.restrict(Rect::new(0, 0, s.coord, h)), d.restrict(Rect::new(s.coord, 0, w, h))),
        Axis::Horizontal => (d.restrict(Rect::new(0, 0, w, s.coord)), d.restrict(Rect::new(0, s.coord, w, h))),
    }
}

pub fn is_guillotine(d: &Drawing) -> bool {
    if d.rects.len() == 1 {
        return true;
    }
    let st = SegmentStructure::build(d);
    match find_cut(&st) {
        None => false,
        Some(c) => {
            let (a, b) = split_at(d, &st, c);
            is_guillotine(&a) && is_guillotine(&b)
        }
    }
}

pub fn is_diagonal(st: &SegmentStructure) -> bool {
    !contains(st, PatternId::P3) && !contains(st, PatternId::P4)
}
