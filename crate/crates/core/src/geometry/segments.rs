use std::collections::BTreeMap;

use super::drawing::{Drawing, Rect};
use crate::error::{Error, Result};

pub type SegId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// The four sides of the bounding box, in the order S1..S4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    East,
    South,
    West,
    North,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::East, Side::South, Side::West, Side::North];

    /// Segment id of the boundary pseudo-segment.
    pub fn seg(self) -> SegId {
        self as usize
    }
}

/// Which face of a segment something lies on: `Low` is west of a vertical / south of a horizontal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    Low,
    High,
}

impl Face {
    pub fn flip(self) -> Face {
        match self {
            Face::Low => Face::High,
            Face::High => Face::Low,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub axis: Axis,
    /// x of a vertical segment, y of a horizontal one.
    pub coord: u32,
    pub lo: u32,
    pub hi: u32,
    pub boundary: Option<Side>,
    /// Segment the lower (resp. upper) endpoint lies on. `None` for boundary sides.
    pub lo_host: Option<SegId>,
    pub hi_host: Option<SegId>,
}

impl Segment {
    pub fn is_internal(&self) -> bool {
        self.boundary.is_none()
    }

    /// The two segments cross or touch.
    pub fn meets(&self, o: &Segment) -> bool {
        self.axis != o.axis && self.lo <= o.coord && o.coord <= self.hi && o.lo <= self.coord && self.coord <= o.hi
    }
}

/// An endpoint of `stem` lying in the relative interior of `host`, on face `face` of the host.
///
/// Vertical host: `Low` is ┤, `High` is ├. Horizontal host: `High` is ⊥, `Low` is ⊤.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Junction {
    pub stem: SegId,
    pub host: SegId,
    pub pos: u32,
    pub face: Face,
}

/// Maximal segments of a valid drawing, the four boundary sides first (ids 0..4 = E, S, W, N).
#[derive(Clone, Debug)]
pub struct SegmentStructure {
    pub width: u32,
    pub height: u32,
    pub segments: Vec<Segment>,
    pub junctions: Vec<Junction>,
    /// Per segment, junction indices sorted by position.
    stems: Vec<Vec<usize>>,
    /// Per segment and face, incident rectangle ids sorted by position.
    side_rects: Vec<[Vec<usize>; 2]>,
}

impl SegmentStructure {
    /// Checked constructor.
    pub fn new(d: &Drawing) -> Result<Self> {
        let rep = d.validate();
        if !rep.is_ok() {
            return Err(Error::InvalidDrawing(rep.to_string()));
        }
        Ok(Self::build(d))
    }

    /// Caller guarantees validity.
    pub(crate) fn build(d: &Drawing) -> Self {
        let (w, h) = (d.width, d.height);
        let mut segments = vec![
            Segment { axis: Axis::Vertical, coord: w, lo: 0, hi: h, boundary: Some(Side::East), lo_host: None, hi_host: None },
            Segment { axis: Axis::Horizontal, coord: 0, lo: 0, hi: w, boundary: Some(Side::South), lo_host: None, hi_host: None },
            Segment { axis: Axis::Vertical, coord: 0, lo: 0, hi: h, boundary: Some(Side::West), lo_host: None, hi_host: None },
            Segment { axis: Axis::Horizontal, coord: h, lo: 0, hi: w, boundary: Some(Side::North), lo_host: None, hi_host: None },
        ];
        let mut walls: [BTreeMap<u32, Vec<(u32, u32)>>; 2] = [BTreeMap::new(), BTreeMap::new()];
        for r in &d.rects {
            if r.x_lo > 0 {
                walls[1].entry(r.x_lo).or_default().push((r.y_lo, r.y_hi));
            }
            if r.y_lo > 0 {
                walls[0].entry(r.y_lo).or_default().push((r.x_lo, r.x_hi));
            }
        }
        for (k, axis) in [(0, Axis::Horizontal), (1, Axis::Vertical)] {
            for (&coord, ivs) in walls[k].iter_mut() {
                ivs.sort_unstable();
                let mut cur = ivs[0];
                for &(a, b) in &ivs[1..] {
                    if a <= cur.1 {
                        cur.1 = cur.1.max(b);
                    } else {
                        segments.push(Segment { axis, coord, lo: cur.0, hi: cur.1, boundary: None, lo_host: None, hi_host: None });
                        cur = (a, b);
                    }
                }
                segments.push(Segment { axis, coord, lo: cur.0, hi: cur.1, boundary: None, lo_host: None, hi_host: None });
            }
        }

        // Lookup tables: coordinate -> segments on that line.
        let mut lines: [BTreeMap<u32, Vec<SegId>>; 2] = [BTreeMap::new(), BTreeMap::new()];
        for (i, s) in segments.iter().enumerate() {
            lines[axis_idx(s.axis)].entry(s.coord).or_default().push(i);
        }
        let find = |axis: Axis, coord: u32, at: u32, strict: bool| -> Option<SegId> {
            lines[axis_idx(axis)].get(&coord)?.iter().copied().find(|&i| {
                let s = &segments[i];
                if strict {
                    s.lo < at && at < s.hi
                } else {
                    s.lo <= at && at <= s.hi
                }
            })
        };

        let mut junctions = Vec::new();
        let mut hosts = Vec::with_capacity(segments.len());
        for (i, s) in segments.iter().enumerate() {
            if !s.is_internal() {
                hosts.push((None, None));
                continue;
            }
            let other = match s.axis {
                Axis::Vertical => Axis::Horizontal,
                Axis::Horizontal => Axis::Vertical,
            };
            let lo = find(other, s.lo, s.coord, true).expect("endpoint on a perpendicular segment");
            let hi = find(other, s.hi, s.coord, true).expect("endpoint on a perpendicular segment");
            junctions.push(Junction { stem: i, host: lo, pos: s.coord, face: Face::High });
            junctions.push(Junction { stem: i, host: hi, pos: s.coord, face: Face::Low });
            hosts.push((Some(lo), Some(hi)));
        }
        let mut stems = vec![Vec::new(); segments.len()];
        for (j, jn) in junctions.iter().enumerate() {
            stems[jn.host].push(j);
        }
        for v in &mut stems {
            v.sort_by_key(|&j| junctions[j].pos);
        }

        let mut side_rects = vec![[Vec::new(), Vec::new()]; segments.len()];
        for (ri, r) in d.rects.iter().enumerate() {
            let l = find(Axis::Vertical, r.x_lo, r.y_lo, false).unwrap();
            let rr = find(Axis::Vertical, r.x_hi, r.y_lo, false).unwrap();
            let b = find(Axis::Horizontal, r.y_lo, r.x_lo, false).unwrap();
            let t = find(Axis::Horizontal, r.y_hi, r.x_lo, false).unwrap();
            side_rects[l][1].push(ri);
            side_rects[rr][0].push(ri);
            side_rects[b][1].push(ri);
            side_rects[t][0].push(ri);
        }
        for (s, faces) in segments.iter().zip(side_rects.iter_mut()) {
            for f in faces.iter_mut() {
                f.sort_by_key(|&ri| {
                    let r: &Rect = &d.rects[ri];
                    match s.axis {
                        Axis::Vertical => r.y_lo,
                        Axis::Horizontal => r.x_lo,
                    }
                });
            }
        }

        for (s, (lo, hi)) in segments.iter_mut().zip(hosts) {
            s.lo_host = lo;
            s.hi_host = hi;
        }
        SegmentStructure { width: w, height: h, segments, junctions, stems, side_rects }
    }

    pub fn internal(&self) -> impl Iterator<Item = (SegId, &Segment)> {
        self.segments.iter().enumerate().skip(4)
    }

    pub fn internal_count(&self) -> usize {
        self.segments.len() - 4
    }

    /// Junctions hosted by `seg`, ordered by position along it.
    pub fn stems_on(&self, seg: SegId) -> impl Iterator<Item = &Junction> {
        self.stems[seg].iter().map(move |&j| &self.junctions[j])
    }

    /// Rectangles with a side on `seg` lying on `face`, ordered by position.
    pub fn rects_on(&self, seg: SegId, face: Face) -> &[usize] {
        &self.side_rects[seg][face as usize]
    }

    /// Internal segments spanning the box side to side.
    pub fn cuts(&self) -> impl Iterator<Item = (SegId, &Segment)> {
        self.internal().filter(|(_, s)| match s.axis {
            Axis::Vertical => s.lo == 0 && s.hi == self.height,
            Axis::Horizontal => s.lo == 0 && s.hi == self.width,
        })
    }
}

fn axis_idx(a: Axis) -> usize {
    match a {
        Axis::Horizontal => 0,
        Axis::Vertical => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_has_only_boundary() {
        let s = SegmentStructure::new(&Drawing::unit()).unwrap();
        assert_eq!(s.segments.len(), 4);
        assert_eq!(s.internal_count(), 0);
        assert!(s.junctions.is_empty());
        for side in Side::ALL {
            assert_eq!(s.segments[side.seg()].boundary, Some(side));
        }
    }

    #[test]
    fn vertical_split_is_a_cut() {
        let d = Drawing::new(2, 1, vec![Rect::new(0, 0, 1, 1), Rect::new(1, 0, 2, 1)]);
        let s = SegmentStructure::new(&d).unwrap();
        assert_eq!(s.internal_count(), 1);
        let cuts: Vec<_> = s.cuts().collect();
        assert_eq!(cuts.len(), 1);
        let c = cuts[0].1;
        assert_eq!((c.axis, c.coord, c.lo, c.hi), (Axis::Vertical, 1, 0, 1));
        assert_eq!(c.lo_host, Some(Side::South.seg()));
        assert_eq!(c.hi_host, Some(Side::North.seg()));
        assert_eq!(s.rects_on(cuts[0].0, Face::Low), &[0]);
        assert_eq!(s.rects_on(cuts[0].0, Face::High), &[1]);
    }

    #[test]
    fn pinwheel_segments() {
        let s = SegmentStructure::new(&Drawing::pinwheel()).unwrap();
        assert_eq!(s.internal_count(), 4);
        for (_, seg) in s.internal() {
            let lo_b = seg.lo_host.unwrap() < 4;
            let hi_b = seg.hi_host.unwrap() < 4;
            assert!(lo_b ^ hi_b, "{seg:?}");
        }
        // junction orientation: the vertical x=2 (y in 0..2) ends on y=2 from below
        let (v, _) = s.internal().find(|(_, g)| g.axis == Axis::Vertical && g.coord == 2).unwrap();
        let j = s.junctions.iter().find(|j| j.stem == v && j.host >= 4).unwrap();
        assert_eq!(j.face, Face::Low);
    }

    #[test]
    fn rejects_invalid() {
        let d = Drawing::new(2, 1, vec![Rect::new(0, 0, 1, 1)]);
        assert!(matches!(SegmentStructure::new(&d), Err(Error::InvalidDrawing(_))));
    }
}
