use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of 1..n in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > 255 {
            return Err(Error::Parse(format!("permutation length {n} out of range")));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!("{values:?} is not a permutation of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u8>) -> Self {
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.0.len() as u8;
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation(inv)
    }

    /// All permutations of 1..n in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut cur: Option<Vec<u8>> = Some((1..=n as u8).collect());
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut v = out.clone();
            cur = if next_permutation(&mut v) { Some(v) } else { None };
            Some(Permutation(out))
        })
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() >= 10 { "," } else { "" };
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// "2143", or comma separated for n >= 10.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let vals: Result<Vec<u8>> = if s.contains(',') {
            s.split(',').map(|x| x.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad permutation {s:?}")))).collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse(format!("bad permutation {s:?}"))))
                .collect()
        };
        Permutation::new(vals?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p: Permutation = "2143".parse().unwrap();
        assert_eq!(p.values(), &[2, 1, 4, 3]);
        assert_eq!(p.to_string(), "2143");
        assert!("2243".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        let big: Permutation = "10,1,2,3,4,5,6,7,8,9".parse().unwrap();
        assert_eq!(big.to_string(), "10,1,2,3,4,5,6,7,8,9");
    }

    #[test]
    fn all_counts() {
        assert_eq!(Permutation::all(4).count(), 24);
        assert_eq!(Permutation::all(1).count(), 1);
        let v: Vec<String> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(v, ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn symmetries() {
        let p: Permutation = "2413".parse().unwrap();
        assert_eq!(p.reverse().to_string(), "3142");
        assert_eq!(p.complement().to_string(), "3142");
        assert_eq!(p.inverse().to_string(), "3142");
    }
}
