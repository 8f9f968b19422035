use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A pattern whose bracketed letters must sit at adjacent positions, e.g. "2[14]3".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VincularPattern {
    letters: Vec<u8>,
    /// `adjacent[i]`: letters i and i+1 must occupy consecutive positions.
    adjacent: Vec<bool>,
}

impl VincularPattern {
    pub fn classical(letters: Vec<u8>) -> Result<Self> {
        let k = letters.len();
        Self::new(letters, vec![false; k.saturating_sub(1)])
    }

    pub fn new(letters: Vec<u8>, adjacent: Vec<bool>) -> Result<Self> {
        let k = letters.len();
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        if k == 0 || sorted.iter().enumerate().any(|(i, &v)| v as usize != i + 1) {
            return Err(Error::Parse(format!("pattern letters {letters:?} are not a permutation")));
        }
        if adjacent.len() != k - 1 {
            return Err(Error::Parse("adjacency length must be one less than the pattern length".into()));
        }
        Ok(VincularPattern { letters, adjacent })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn is_classical(&self) -> bool {
        !self.adjacent.iter().any(|&a| a)
    }

    /// Does `host` (values 1..n in any order) contain an occurrence?
    pub fn occurs_in(&self, host: &[u8]) -> bool {
        let mut idx = Vec::with_capacity(self.letters.len());
        self.search(host, &mut idx, 0)
    }

    fn search(&self, host: &[u8], idx: &mut Vec<usize>, from: usize) -> bool {
        let k = idx.len();
        if k == self.letters.len() {
            return true;
        }
        let remaining = self.letters.len() - k;
        if host.len() < from + remaining {
            return false;
        }
        let (lo, hi) = if k > 0 && self.adjacent[k - 1] {
            (from, from + 1)
        } else {
            (from, host.len() + 1 - remaining)
        };
        for p in lo..hi.min(host.len()) {
            let v = host[p];
            let q = self.letters[k];
            let ok = idx.iter().zip(&self.letters).all(|(&j, &qj)| (host[j] < v) == (qj < q));
            if ok {
                idx.push(p);
                if self.search(host, idx, p + 1) {
                    return true;
                }
                idx.pop();
            }
        }
        false
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.letters.len();
        let mut i = 0;
        while i < k {
            let mut j = i;
            while j + 1 < k && self.adjacent[j] {
                j += 1;
            }
            if j > i {
                f.write_str("[")?;
            }
            for l in &self.letters[i..=j] {
                write!(f, "{l}")?;
            }
            if j > i {
                f.write_str("]")?;
            }
            i = j + 1;
        }
        Ok(())
    }
}

impl FromStr for VincularPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut adjacent = Vec::new();
        let mut open = false;
        let mut in_group = 0;
        for c in s.trim().chars() {
            match c {
                '[' if !open => {
                    open = true;
                    in_group = 0;
                }
                ']' if open => {
                    if in_group < 2 {
                        return Err(Error::Parse(format!("bracket group in {s:?} needs two letters")));
                    }
                    open = false;
                }
                d if d.is_ascii_digit() && d != '0' => {
                    if !letters.is_empty() {
                        adjacent.push(open && in_group > 0);
                    }
                    letters.push(d as u8 - b'0');
                    in_group += 1;
                }
                _ => return Err(Error::Parse(format!("bad vincular pattern {s:?}"))),
            }
        }
        if open {
            return Err(Error::Parse(format!("unclosed bracket in {s:?}")));
        }
        VincularPattern::new(letters, adjacent)
    }
}
