//! Comparing computed prefixes with OEIS b-files.
//!
//! Access goes through [`Transport`]; the library ships only [`FixtureTransport`], which reads
//! recorded b-files from a directory. The CLI adds a network transport that records into the
//! same layout.

use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{count_class, Method};
use crate::perm::count_avoiders;
use crate::table::{self, ROWS};

/// Shifts tried when aligning our indexing with the sequence's.
pub const MAX_SHIFT: i64 = 3;

/// Where the local values for a sequence come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    /// Separable permutations avoiding the row's patterns, n = 1..=10.
    Row(u8),
    /// Oracle vortex counts, n = 1..=7.
    Vortices,
    /// All classes from the oracle, n = 1..=7.
    AllClasses,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Row(k) => write!(f, "case {k} ({})", table::row_by_case(*k).map_or("?", |r| r.entry)),
            Source::Vortices => write!(f, "vortices ({})", table::VORTEX_ENTRY),
            Source::AllClasses => f.write_str("all classes"),
        }
    }
}

/// The eleven cited sequences, table order, then the vortex sequence.
pub fn cited() -> Vec<(&'static str, Source)> {
    let mut v: Vec<_> = ROWS.iter().map(|r| (r.oeis, Source::Row(r.case))).collect();
    v.push((table::VORTEX_OEIS, Source::Vortices));
    v
}

/// Cited sequences plus the total class count used as a canonicalization check.
pub fn known() -> Vec<(&'static str, Source)> {
    let mut v = cited();
    v.push((table::ALL_OEIS, Source::AllClasses));
    v
}

pub fn source_of(id: &str) -> Result<Source> {
    known().into_iter().find(|(i, _)| *i == id).map(|(_, s)| s).ok_or_else(|| Error::Oeis(format!("{id} is not one of the supported sequences")))
}

/// Our counts for n = 1, 2, ...
pub fn local_values(src: Source) -> Result<Vec<BigInt>> {
    match src {
        Source::Row(k) => {
            let row = table::row_by_case(k).ok_or_else(|| Error::Oeis(format!("no case {k}")))?;
            let pats = row.vincular();
            Ok((1..=10).map(|n| BigInt::from(count_avoiders(n, &pats))).collect())
        }
        Source::Vortices => {
            let set = table::parse_entry(table::VORTEX_ENTRY)?;
            (1..=7).map(|n| count_class(n, set, Method::Oracle).map(BigInt::from)).collect()
        }
        Source::AllClasses => (1..=7).map(|n| crate::generators::oracle::all_rectangulations(n).map(|v| BigInt::from(v.len()))).collect(),
    }
}

/// `b006318.txt` for `A006318`.
pub fn bfile_name(id: &str) -> Result<String> {
    match id.strip_prefix('A') {
        Some(d) if d.len() == 6 && d.bytes().all(|b| b.is_ascii_digit()) => Ok(format!("b{d}.txt")),
        _ => Err(Error::Oeis(format!("bad sequence id {id:?}"))),
    }
}

/// Source of b-file text.
pub trait Transport {
    fn bfile(&self, id: &str) -> Result<String>;
}

/// Reads `b??????.txt` files from a directory.
#[derive(Clone, Debug)]
pub struct FixtureTransport {
    pub dir: PathBuf,
}

impl FixtureTransport {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FixtureTransport { dir: dir.into() }
    }

    /// The fixture directory shipped with the crate.
    pub fn bundled() -> Self {
        Self::new(Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("oeis"))
    }

    pub fn path(&self, id: &str) -> Result<PathBuf> {
        Ok(self.dir.join(bfile_name(id)?))
    }
}

impl Transport for FixtureTransport {
    fn bfile(&self, id: &str) -> Result<String> {
        let p = self.path(id)?;
        std::fs::read_to_string(&p).map_err(|e| Error::Oeis(format!("no recorded b-file for {id} at {}: {e}", p.display())))
    }
}

/// `(index, value)` pairs; `#` lines and blank lines are skipped.
pub fn parse_bfile(text: &str) -> Result<Vec<(i64, BigInt)>> {
    let mut out: Vec<(i64, BigInt)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse(format!("b-file line {}: {line:?}", i + 1));
        let mut w = line.split_whitespace();
        let (Some(a), Some(b), None) = (w.next(), w.next(), w.next()) else {
            return Err(bad());
        };
        let n: i64 = a.parse().map_err(|_| bad())?;
        let v: BigInt = b.parse().map_err(|_| bad())?;
        if out.last().is_some_and(|(m, _)| *m + 1 != n) {
            return Err(Error::Parse(format!("b-file line {}: index {n} is not consecutive", i + 1)));
        }
        out.push((n, v));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty b-file".into()));
    }
    Ok(out)
}

/// Shifts `s` with `|s| <= max_shift` such that `local[k] = a(k + 1 + s)` for every `k`,
/// smallest `|s|` first.
pub fn matching_shifts(local: &[BigInt], terms: &[(i64, BigInt)], max_shift: i64) -> Vec<i64> {
    let Some(&(first, _)) = terms.first() else { return Vec::new() };
    let mut shifts: Vec<i64> = (-max_shift..=max_shift).collect();
    shifts.sort_by_key(|s| (s.abs(), *s));
    shifts
        .into_iter()
        .filter(|&s| {
            local.iter().enumerate().all(|(k, v)| {
                let idx = k as i64 + 1 + s - first;
                idx >= 0 && terms.get(idx as usize).is_some_and(|(_, t)| t == v)
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub id: String,
    pub source: String,
    pub local: Vec<String>,
    /// All shifts that match; the reported offset is the first.
    pub shifts: Vec<i64>,
    pub oeis_prefix: Vec<String>,
}

impl Comparison {
    pub fn shift(&self) -> Option<i64> {
        self.shifts.first().copied()
    }

    pub fn passed(&self) -> bool {
        !self.shifts.is_empty()
    }
}

pub fn compare(t: &dyn Transport, id: &str, local: &[BigInt], source: &str) -> Result<Comparison> {
    let terms = parse_bfile(&t.bfile(id)?)?;
    let shifts = matching_shifts(local, &terms, MAX_SHIFT);
    Ok(Comparison {
        id: id.to_string(),
        source: source.to_string(),
        local: local.iter().map(|v| v.to_string()).collect(),
        shifts,
        oeis_prefix: terms.iter().take(local.len() + 2 * MAX_SHIFT as usize).map(|(n, v)| format!("{n}:{v}")).collect(),
    })
}

/// Compares a supported sequence against our own values.
pub fn check(t: &dyn Transport, id: &str) -> Result<Comparison> {
    let src = source_of(id)?;
    compare(t, id, &local_values(src)?, &src.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Fake(&'static str);

    impl Transport for Fake {
        fn bfile(&self, _: &str) -> Result<String> {
            Ok(self.0.to_string())
        }
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn names() {
        assert_eq!(bfile_name("A006318").unwrap(), "b006318.txt");
        assert!(bfile_name("A6318").is_err());
        assert!(bfile_name("../x").is_err());
        assert_eq!(cited().len(), 11);
        assert_eq!(source_of("A026029").unwrap(), Source::Vortices);
        assert!(source_of("A000045").is_err());
    }

    #[test]
    fn parses_and_rejects() {
        let t = parse_bfile("# comment\n0 1\n1 1\n2 2\n\n3 5\n").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[3], (3, BigInt::from(5)));
        assert!(parse_bfile("0 1\n2 3\n").is_err());
        assert!(parse_bfile("0 x\n").is_err());
        assert!(parse_bfile("0 1 2\n").is_err());
        assert!(parse_bfile("# only\n").is_err());
    }

    #[test]
    fn shift_search() {
        // offset 0 sequence 10, 11, 12, ... ; local n = 1.. is 12, 13, 14: a(n + 1)
        let terms = parse_bfile("0 10\n1 11\n2 12\n3 13\n4 14\n5 15\n").unwrap();
        assert_eq!(matching_shifts(&big(&[12, 13, 14]), &terms, 3), [1]);
        assert_eq!(matching_shifts(&big(&[10, 11]), &terms, 3), [-1]);
        assert!(matching_shifts(&big(&[10, 12]), &terms, 3).is_empty());
        // too short for the prefix
        assert!(matching_shifts(&big(&[14, 15, 16]), &terms, 3).is_empty());
        let c = compare(&Fake("1 1\n2 2\n3 6\n"), "A000001", &big(&[1, 2, 6]), "x").unwrap();
        assert_eq!(c.shift(), Some(0));
    }

    #[test]
    fn missing_fixture_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let t = FixtureTransport::new(dir.path());
        assert!(matches!(t.bfile("A006318"), Err(Error::Oeis(_))));
        std::fs::write(dir.path().join("b006318.txt"), "0 1\n1 1\n2 2\n3 6\n4 22\n").unwrap();
        let c = compare(&t, "A006318", &big(&[1, 2, 6, 22]), "case 1").unwrap();
        assert_eq!(c.shifts, [0]);
    }

    #[test]
    fn local_row_values() {
        let v = local_values(Source::Row(1)).unwrap();
        assert_eq!(v[..6], big(&[1, 2, 6, 22, 90, 394]));
        assert_eq!(v.len(), 10);
    }
}
