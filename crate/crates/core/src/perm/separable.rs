use std::fmt;

use super::Permutation;
use crate::error::{Error, Result};

/// Maximal-block decomposition tree of a separable permutation.
///
/// Children of an ascending node are leaves or descending nodes and vice versa.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeparableTree {
    Leaf,
    /// Direct sum, blocks listed left to right (increasing values).
    Ascending(Vec<SeparableTree>),
    /// Skew sum, blocks listed left to right (decreasing values).
    Descending(Vec<SeparableTree>),
}

impl SeparableTree {
    pub fn size(&self) -> usize {
        match self {
            SeparableTree::Leaf => 1,
            SeparableTree::Ascending(c) | SeparableTree::Descending(c) => c.iter().map(Self::size).sum(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SeparableTree::Leaf => 0,
            SeparableTree::Ascending(c) | SeparableTree::Descending(c) => 1 + c.iter().map(Self::depth).max().unwrap_or(0),
        }
    }

    /// Tree of the reversed permutation: node kinds swap, child order reverses.
    pub fn reverse(&self) -> SeparableTree {
        match self {
            SeparableTree::Leaf => SeparableTree::Leaf,
            SeparableTree::Ascending(c) => SeparableTree::Descending(c.iter().rev().map(Self::reverse).collect()),
            SeparableTree::Descending(c) => SeparableTree::Ascending(c.iter().rev().map(Self::reverse).collect()),
        }
    }

    /// Tree of the reverse-complement: kinds stay, child order reverses.
    pub fn reverse_complement(&self) -> SeparableTree {
        match self {
            SeparableTree::Leaf => SeparableTree::Leaf,
            SeparableTree::Ascending(c) => SeparableTree::Ascending(c.iter().rev().map(Self::reverse_complement).collect()),
            SeparableTree::Descending(c) => SeparableTree::Descending(c.iter().rev().map(Self::reverse_complement).collect()),
        }
    }

    /// Normal form check: at least two children, alternating kinds.
    pub fn is_normal(&self) -> bool {
        match self {
            SeparableTree::Leaf => true,
            SeparableTree::Ascending(c) => {
                c.len() >= 2 && c.iter().all(|t| !matches!(t, SeparableTree::Ascending(_)) && t.is_normal())
            }
            SeparableTree::Descending(c) => {
                c.len() >= 2 && c.iter().all(|t| !matches!(t, SeparableTree::Descending(_)) && t.is_normal())
            }
        }
    }
}

impl fmt::Display for SeparableTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sym, c) = match self {
            SeparableTree::Leaf => return f.write_str("1"),
            SeparableTree::Ascending(c) => ("+", c),
            SeparableTree::Descending(c) => ("-", c),
        };
        write!(f, "{sym}(")?;
        for (i, t) in c.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

pub fn decompose(p: &Permutation) -> Result<SeparableTree> {
    decompose_block(p.values()).map_err(|block| Error::NotSeparable {
        perm: p.to_string(),
        block: block.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
    })
}

pub fn is_separable(p: &Permutation) -> bool {
    decompose_block(p.values()).is_ok()
}

fn decompose_block(v: &[u8]) -> std::result::Result<SeparableTree, Vec<u8>> {
    let n = v.len();
    if n == 1 {
        return Ok(SeparableTree::Leaf);
    }
    let mut pmax = vec![0u8; n];
    let mut pmin = vec![0u8; n];
    let (mut mx, mut mn) = (0u8, u8::MAX);
    for i in 0..n {
        mx = mx.max(v[i]);
        mn = mn.min(v[i]);
        pmax[i] = mx;
        pmin[i] = mn;
    }
    let mut smax = vec![0u8; n];
    let mut smin = vec![0u8; n];
    let (mut mx, mut mn) = (0u8, u8::MAX);
    for i in (0..n).rev() {
        mx = mx.max(v[i]);
        mn = mn.min(v[i]);
        smax[i] = mx;
        smin[i] = mn;
    }
    let direct: Vec<usize> = (0..n - 1).filter(|&i| pmax[i] < smin[i + 1]).collect();
    let skew: Vec<usize> = (0..n - 1).filter(|&i| pmin[i] > smax[i + 1]).collect();
    let (splits, asc) = if !direct.is_empty() {
        (direct, true)
    } else if !skew.is_empty() {
        (skew, false)
    } else {
        return Err(v.to_vec());
    };
    let mut children = Vec::with_capacity(splits.len() + 1);
    let mut start = 0;
    for end in splits.into_iter().map(|i| i + 1).chain([n]) {
        children.push(decompose_block(&v[start..end])?);
        start = end;
    }
    Ok(if asc { SeparableTree::Ascending(children) } else { SeparableTree::Descending(children) })
}

pub fn flatten(t: &SeparableTree) -> Permutation {
    let mut out = Vec::with_capacity(t.size());
    fill(t, 1, &mut out);
    Permutation::from_vec_unchecked(out)
}

fn fill(t: &SeparableTree, base: u8, out: &mut Vec<u8>) {
    match t {
        SeparableTree::Leaf => out.push(base),
        SeparableTree::Ascending(c) => {
            let mut b = base;
            for ch in c {
                fill(ch, b, out);
                b += ch.size() as u8;
            }
        }
        SeparableTree::Descending(c) => {
            let mut b = base + t.size() as u8;
            for ch in c {
                b -= ch.size() as u8;
                fill(ch, b, out);
            }
        }
    }
}

/// Flat tables of ascending and descending separable permutations by size.
struct Tables {
    asc: Vec<Vec<u8>>,
    desc: Vec<Vec<u8>>,
}

impl Tables {
    fn build(upto: usize) -> Self {
        let mut t = Tables { asc: vec![Vec::new(); upto + 1], desc: vec![Vec::new(); upto + 1] };
        for m in 2..=upto {
            let mut a = Vec::new();
            t.emit(m, true, &mut |p| a.extend_from_slice(p));
            let mut d = Vec::new();
            t.emit(m, false, &mut |p| d.extend_from_slice(p));
            t.asc[m] = a;
            t.desc[m] = d;
        }
        t
    }

    /// Visits separable permutations of size `k`, optionally restricted to one root kind.
    fn each_sized(&self, k: usize, kind: Option<bool>, f: &mut dyn FnMut(&[u8])) {
        if k == 1 {
            if kind.is_none() {
                f(&[1]);
            }
            return;
        }
        if kind != Some(false) {
            self.asc[k].chunks_exact(k).for_each(&mut *f);
        }
        if kind != Some(true) {
            self.desc[k].chunks_exact(k).for_each(&mut *f);
        }
    }

    /// Root of size `n` with first block of size `k` and the rest any separable permutation
    /// that, together with the first block, gives a maximal first block.
    fn emit(&self, n: usize, asc: bool, f: &mut dyn FnMut(&[u8])) {
        let mut buf = vec![0u8; n];
        for k in 1..n {
            let rest = n - k;
            // first block: a leaf or a node of the opposite kind
            let mut firsts: Vec<Vec<u8>> = Vec::new();
            if k == 1 {
                firsts.push(vec![1]);
            } else {
                self.each_sized(k, Some(!asc), &mut |p| firsts.push(p.to_vec()));
            }
            for first in &firsts {
                // remainder: any separable permutation of size `rest`; when it is itself of
                // the same kind its blocks simply continue the sequence
                self.each_sized_all(rest, &mut |r| {
                    if asc {
                        buf[..k].copy_from_slice(first);
                        for (b, &v) in buf[k..].iter_mut().zip(r) {
                            *b = v + k as u8;
                        }
                    } else {
                        for (b, &v) in buf[..k].iter_mut().zip(first) {
                            *b = v + rest as u8;
                        }
                        buf[k..].copy_from_slice(r);
                    }
                    f(&buf);
                });
            }
        }
    }

    fn each_sized_all(&self, k: usize, f: &mut dyn FnMut(&[u8])) {
        self.each_sized(k, None, f)
    }
}

/// Calls `f` once for every separable permutation of size `n`.
pub fn for_each_separable(n: usize, mut f: impl FnMut(&[u8])) {
    assert!((1..=30).contains(&n), "separable enumeration supports 1 <= n <= 30");
    if n == 1 {
        f(&[1]);
        return;
    }
    let t = Tables::build(n - 1);
    t.emit(n, true, &mut f);
    t.emit(n, false, &mut f);
}

/// All separable permutations of size `n` in lexicographic order.
pub fn generate_separable(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_separable(n, |p| out.push(Permutation::from_vec_unchecked(p.to_vec())));
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::VincularPattern;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn small_trees() {
        assert_eq!(decompose(&perm("1")).unwrap(), SeparableTree::Leaf);
        let t = decompose(&perm("2143")).unwrap();
        assert_eq!(t.to_string(), "+(-(1 1) -(1 1))");
        assert!(matches!(decompose(&perm("2413")), Err(Error::NotSeparable { .. })));
        assert!(!is_separable(&perm("3142")));
    }

    #[test]
    fn separable_counts_match_filter() {
        let q1: VincularPattern = "2413".parse().unwrap();
        let q2: VincularPattern = "3142".parse().unwrap();
        let mut counts = Vec::new();
        for n in 1..=7 {
            let brute: Vec<Permutation> =
                Permutation::all(n).filter(|p| !q1.occurs_in(p.values()) && !q2.occurs_in(p.values())).collect();
            assert_eq!(generate_separable(n), brute, "n={n}");
            counts.push(brute.len());
        }
        assert_eq!(counts, [1, 2, 6, 22, 90, 394, 1806]);
    }

    #[test]
    fn generated_trees_are_normal_and_round_trip() {
        for n in 1..=7 {
            for p in generate_separable(n) {
                let t = decompose(&p).unwrap();
                assert!(t.is_normal());
                assert_eq!(flatten(&t), p);
            }
        }
    }

    #[test]
    fn reverse_complement_mirrors_trees() {
        for p in generate_separable(6) {
            let rc = p.reverse().complement();
            assert_eq!(decompose(&rc).unwrap(), decompose(&p).unwrap().reverse_complement());
            assert_eq!(decompose(&p.reverse()).unwrap(), decompose(&p).unwrap().reverse());
        }
    }
}
