//! Whirls and vortices: peeling, nesting of windmills and the shell/interior split.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Drawing, Rect, SegmentStructure};
use crate::patterns::{self, PatternSet};

use super::oracle;
use super::whirl::{is_vortex, is_whirl, spanning_rect};

/// Removes one spanning rectangle and closes the gap.
fn remove_spanning(d: &Drawing, i: usize) -> Drawing {
    let r = d.rects[i];
    let mut out = Drawing::new(d.width, d.height, Vec::with_capacity(d.rects.len() - 1));
    if r.x_lo == 0 && r.x_hi == d.width {
        let dy = r.height();
        out.height -= dy;
        for (j, s) in d.rects.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut s = *s;
            if s.y_lo >= r.y_hi {
                s.y_lo -= dy;
                s.y_hi -= dy;
            }
            out.rects.push(s);
        }
    } else {
        let dx = r.width();
        out.width -= dx;
        for (j, s) in d.rects.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut s = *s;
            if s.x_lo >= r.x_hi {
                s.x_lo -= dx;
                s.x_hi -= dx;
            }
            out.rects.push(s);
        }
    }
    out
}

/// Deletes spanning rectangles until none remain.
pub fn peel(d: &Drawing) -> Result<Drawing> {
    let st = SegmentStructure::new(d)?;
    if !is_whirl(&st) {
        return Err(Error::NotAWhirl("input avoids P2 or contains another pattern".into()));
    }
    let mut cur = d.clone();
    while let Some(i) = spanning_rect(&cur) {
        cur = remove_spanning(&cur, i);
        if !cur.is_valid() {
            return Err(Error::NotAWhirl(format!("peeling produced an invalid drawing:\n{}", cur.render_ascii())));
        }
    }
    Ok(cur.tightened())
}

/// Number of rectangles removed by [`peel`].
pub fn peel_count(d: &Drawing) -> Result<usize> {
    Ok(d.rects.len() - peel(d)?.rects.len())
}

/// Are the windmill interiors totally ordered by inclusion?
pub fn windmills_nested(st: &SegmentStructure) -> bool {
    let ints: Vec<Rect> = patterns::windmills(st).into_iter().map(|w| w.interior).collect();
    ints.iter().enumerate().all(|(i, a)| ints[i + 1..].iter().all(|b| a.contains_rect(b) || b.contains_rect(a)))
}

/// Split of a whirl at its innermost windmill.
#[derive(Clone, Debug, Serialize)]
pub struct Split {
    /// The whirl with the innermost interior replaced by one rectangle.
    pub shell: Drawing,
    /// What filled the innermost interior.
    pub interior: Drawing,
}

pub fn split(d: &Drawing) -> Result<Split> {
    let st = SegmentStructure::new(d)?;
    if !is_whirl(&st) {
        return Err(Error::NotAWhirl("no windmill to split at".into()));
    }
    let inner = patterns::windmills(&st)
        .into_iter()
        .map(|w| w.interior)
        .min_by_key(|r| r.area())
        .expect("whirls have a windmill");
    let interior = d.restrict(inner);
    let mut rects: Vec<Rect> = d.rects.iter().copied().filter(|r| !inner.contains_rect(r)).collect();
    rects.push(inner);
    Ok(Split { shell: Drawing::new(d.width, d.height, rects), interior })
}

/// Whirls whose innermost windmill interior is a single rectangle.
pub fn is_shell(st: &SegmentStructure, d: &Drawing) -> bool {
    is_whirl(st) && patterns::windmills(st).iter().any(|w| d.rects.contains(&w.interior))
}

/// Per-size oracle tallies behind the composition identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VortexCensus {
    pub vortices: u64,
    pub whirls: u64,
    /// Avoiders of all eight patterns.
    pub plain: u64,
    pub shells: u64,
    /// Whirls with one windmill whose interior is one rectangle (peelable or not).
    pub one_windmill_shells: u64,
    pub simple: u64,
    /// Vortices with two or more windmills whose interiors are not nested.
    pub nesting_failures: u64,
}

pub fn vortex_census(n: usize) -> Result<VortexCensus> {
    let mut c = VortexCensus::default();
    for rep in oracle::all_rectangulations(n)? {
        let d = &rep.drawing;
        let st = SegmentStructure::build(d);
        if !is_vortex(&st) {
            continue;
        }
        c.vortices += 1;
        let ws = patterns::windmills(&st);
        if ws.is_empty() {
            c.plain += 1;
            continue;
        }
        c.whirls += 1;
        if ws.len() >= 2 && !windmills_nested(&st) {
            c.nesting_failures += 1;
        }
        if is_shell(&st, d) {
            c.shells += 1;
            if ws.len() == 1 {
                c.one_windmill_shells += 1;
                if spanning_rect(d).is_none() {
                    c.simple += 1;
                }
            }
        }
    }
    Ok(c)
}

/// `(oracle vortex count, Σ shells(m) · plain(n-m+1) + plain(n))` for sizes `1..=max_n`.
pub fn composition_check(max_n: usize) -> Result<Vec<(usize, u64, u64)>> {
    let cs: BTreeMap<usize, VortexCensus> = (1..=max_n).map(|n| Ok((n, vortex_census(n)?))).collect::<Result<_>>()?;
    Ok((1..=max_n)
        .map(|n| {
            let composed = cs[&n].plain + (2..=n).map(|m| cs[&m].shells * cs[&(n - m + 1)].plain).sum::<u64>();
            (n, cs[&n].vortices, composed)
        })
        .collect())
}

/// Checks that every whirl of size `n` splits into a shell and an interior avoiding all eight patterns.
pub fn split_failures(n: usize) -> Result<Vec<Drawing>> {
    let mut bad = Vec::new();
    for rep in oracle::all_rectangulations(n)? {
        let st = SegmentStructure::build(&rep.drawing);
        if !is_whirl(&st) {
            continue;
        }
        let s = split(&rep.drawing)?;
        let sst = SegmentStructure::new(&s.shell)?;
        let ok = is_shell(&sst, &s.shell) && s.interior.is_valid() && patterns::avoids(&SegmentStructure::new(&s.interior)?, PatternSet::ALL);
        if !ok {
            bad.push(rep.drawing);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::canonicalize;

    fn slab_below(d: &Drawing) -> Drawing {
        let mut rects: Vec<Rect> = d.rects.iter().map(|r| Rect::new(r.x_lo, r.y_lo + 1, r.x_hi, r.y_hi + 1)).collect();
        rects.push(Rect::new(0, 0, d.width, 1));
        Drawing::new(d.width, d.height + 1, rects)
    }

    #[test]
    fn peel_examples() {
        let p = Drawing::pinwheel();
        assert_eq!(canonicalize(&peel(&p).unwrap()), canonicalize(&p));
        let q = slab_below(&p);
        assert!(q.is_valid());
        let peeled = peel(&q).unwrap();
        assert_eq!(canonicalize(&peeled), canonicalize(&p));
        assert_eq!(peel_count(&q).unwrap(), 1);
        assert_eq!(canonicalize(&peel(&peeled).unwrap()), canonicalize(&peeled));
        assert!(peel(&Drawing::unit()).is_err());
    }

    #[test]
    fn peel_on_oracle_whirls() {
        for n in 5..=7 {
            for rep in oracle::all_rectangulations(n).unwrap() {
                let st = SegmentStructure::build(&rep.drawing);
                if !is_whirl(&st) {
                    continue;
                }
                let p = peel(&rep.drawing).unwrap();
                assert!(spanning_rect(&p).is_none());
                assert!(is_whirl(&SegmentStructure::new(&p).unwrap()));
            }
        }
    }

    #[test]
    fn split_of_pinwheel() {
        let s = split(&Drawing::pinwheel()).unwrap();
        assert_eq!(s.interior, Drawing::unit());
        assert_eq!(canonicalize(&s.shell), canonicalize(&Drawing::pinwheel()));
    }

    #[test]
    fn splits_are_clean() {
        for n in 5..=7 {
            assert!(split_failures(n).unwrap().is_empty(), "n={n}");
        }
    }
}
