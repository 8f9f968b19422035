use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::drawing::Drawing;
use crate::error::{Error, Result};

/// Incidence code of a rectangulation, invariant under strong equivalence.
///
/// Rectangles are labelled in breadth-first order from the one holding the NW corner.
/// For each rectangle in label order the code lists its neighbours side by side in
/// clockwise order: top (left to right), right (top to bottom), bottom (right to left),
/// left (bottom to top). An empty list marks a side on the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CanonicalCode(Vec<Vec<u16>>);

impl CanonicalCode {
    pub fn size(&self) -> usize {
        self.0.len() / 4
    }

    /// Neighbour labels of rectangle `label` on side `side` (0 top, 1 right, 2 bottom, 3 left).
    pub fn neighbours(&self, label: usize, side: usize) -> &[u16] {
        &self.0[4 * label + side]
    }
}

/// Neighbour lists of every rectangle, sides in clockwise order starting at the top.
pub fn neighbour_lists(d: &Drawing) -> Vec<[Vec<usize>; 4]> {
    let rs = &d.rects;
    let mut out: Vec<[Vec<usize>; 4]> = vec![Default::default(); rs.len()];
    for (i, r) in rs.iter().enumerate() {
        let mut sides: [Vec<usize>; 4] = Default::default();
        for (j, s) in rs.iter().enumerate() {
            if i == j {
                continue;
            }
            let x_ov = r.x_lo < s.x_hi && s.x_lo < r.x_hi;
            let y_ov = r.y_lo < s.y_hi && s.y_lo < r.y_hi;
            if x_ov && s.y_lo == r.y_hi {
                sides[0].push(j);
            } else if y_ov && s.x_lo == r.x_hi {
                sides[1].push(j);
            } else if x_ov && s.y_hi == r.y_lo {
                sides[2].push(j);
            } else if y_ov && s.x_hi == r.x_lo {
                sides[3].push(j);
            }
        }
        sides[0].sort_by_key(|&j| rs[j].x_lo);
        sides[1].sort_by_key(|&j| std::cmp::Reverse(rs[j].y_lo));
        sides[2].sort_by_key(|&j| std::cmp::Reverse(rs[j].x_lo));
        sides[3].sort_by_key(|&j| rs[j].y_lo);
        out[i] = sides;
    }
    out
}

/// Canonical code of a valid drawing.
pub fn canonicalize(d: &Drawing) -> CanonicalCode {
    let nb = neighbour_lists(d);
    let n = d.rects.len();
    let mut label = vec![u16::MAX; n];
    let mut order = Vec::with_capacity(n);
    let start = d.nw_rect().expect("valid drawing has a NW rectangle");
    label[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        order.push(r);
        for side in &nb[r] {
            for &s in side {
                if label[s] == u16::MAX {
                    label[s] = (order.len() + queue.len()) as u16;
                    queue.push_back(s);
                }
            }
        }
    }
    debug_assert_eq!(order.len(), n, "adjacency graph of a tiling is connected");
    let mut code = Vec::with_capacity(4 * n);
    for &r in &order {
        for side in &nb[r] {
            code.push(side.iter().map(|&s| label[s]).collect());
        }
    }
    CanonicalCode(code)
}

pub fn equivalent(a: &Drawing, b: &Drawing) -> bool {
    a.rects.len() == b.rects.len() && canonicalize(a) == canonicalize(b)
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, sides) in self.0.chunks(4).enumerate() {
            if r > 0 {
                f.write_str(";")?;
            }
            for (k, side) in sides.iter().enumerate() {
                if k > 0 {
                    f.write_str("|")?;
                }
                if side.is_empty() {
                    f.write_str("-")?;
                }
                for (i, l) in side.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed canonical code {s:?}"));
        let mut code = Vec::new();
        for rect in s.split(';') {
            let sides: Vec<&str> = rect.split('|').collect();
            if sides.len() != 4 {
                return Err(bad());
            }
            for side in sides {
                if side == "-" {
                    code.push(Vec::new());
                } else {
                    let labels = side.split(',').map(|x| x.parse::<u16>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
                    code.push(labels);
                }
            }
        }
        let n = code.len() / 4;
        if code.iter().flatten().any(|&l| l as usize >= n) {
            return Err(bad());
        }
        Ok(CanonicalCode(code))
    }
}

impl TryFrom<String> for CanonicalCode {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CanonicalCode> for String {
    fn from(c: CanonicalCode) -> String {
        c.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;

    #[test]
    fn splits_differ() {
        let v = Drawing::new(2, 1, vec![Rect::new(0, 0, 1, 1), Rect::new(1, 0, 2, 1)]);
        let h = Drawing::new(1, 2, vec![Rect::new(0, 0, 1, 1), Rect::new(0, 1, 1, 2)]);
        assert_ne!(canonicalize(&v), canonicalize(&h));
        assert_eq!(canonicalize(&v).to_string(), "-|1|-|-;-|-|-|0");
    }

    #[test]
    fn segment_translation_preserves_code() {
        // Left column split at y=1, right column split at y=2 on a 2x3 box; then move the
        // left split to y=1 on a stretched copy without passing the other endpoint.
        let a = Drawing::new(
            2,
            3,
            vec![Rect::new(0, 0, 1, 1), Rect::new(0, 1, 1, 3), Rect::new(1, 0, 2, 2), Rect::new(1, 2, 2, 3)],
        );
        let b = Drawing::new(
            5,
            7,
            vec![Rect::new(0, 0, 3, 4), Rect::new(0, 4, 3, 7), Rect::new(3, 0, 5, 6), Rect::new(3, 6, 5, 7)],
        );
        assert!(equivalent(&a, &b));
        // Passing the endpoint changes the class.
        let c = Drawing::new(
            2,
            3,
            vec![Rect::new(0, 0, 1, 2), Rect::new(0, 2, 1, 3), Rect::new(1, 0, 2, 1), Rect::new(1, 1, 2, 3)],
        );
        assert!(!equivalent(&a, &c));
    }

    #[test]
    fn pinwheel_widths_do_not_matter() {
        let base = canonicalize(&Drawing::pinwheel());
        for (a, b) in [(1, 1), (2, 1), (1, 3), (4, 2)] {
            // columns of widths a, b, 1 and rows of heights 1, b, a
            let (x1, x2, x3) = (a, a + b, a + b + 1);
            let (y1, y2, y3) = (1, 1 + b, 1 + b + a);
            let d = Drawing::new(
                x3,
                y3,
                vec![
                    Rect::new(x2, 0, x3, y2),
                    Rect::new(x1, y2, x3, y3),
                    Rect::new(0, y1, x1, y3),
                    Rect::new(0, 0, x2, y1),
                    Rect::new(x1, y1, x2, y2),
                ],
            );
            assert!(d.is_valid());
            assert_eq!(canonicalize(&d), base);
        }
    }

    #[test]
    fn string_round_trip() {
        let c = canonicalize(&Drawing::pinwheel());
        let s = c.to_string();
        assert_eq!(s.parse::<CanonicalCode>().unwrap(), c);
        assert!("1|2".parse::<CanonicalCode>().is_err());
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<CanonicalCode>(&json).unwrap(), c);
    }
}
