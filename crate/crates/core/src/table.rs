//! The ten guillotine-diagonal classes and their permutation counterparts.

use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::perm::VincularPattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    /// Case number 1..10, also the order of rows.
    pub case: u8,
    /// Avoided geometric patterns as a digit string.
    pub entry: &'static str,
    /// Separable permutations avoiding these correspond to the row.
    pub perm_patterns: &'static [&'static str],
    pub oeis: &'static str,
}

impl TableRow {
    pub fn avoid(&self) -> PatternSet {
        self.entry.parse().expect("table entries are valid")
    }

    pub fn vincular(&self) -> Vec<VincularPattern> {
        self.perm_patterns.iter().map(|s| s.parse().expect("table patterns are valid")).collect()
    }
}

pub const ROWS: [TableRow; 10] = [
    TableRow { case: 1, entry: "1234", perm_patterns: &[], oeis: "A006318" },
    TableRow { case: 2, entry: "12345", perm_patterns: &["2[14]3"], oeis: "A106228" },
    TableRow { case: 3, entry: "12347", perm_patterns: &["21354"], oeis: "A363809" },
    TableRow { case: 4, entry: "123456", perm_patterns: &["2[14]3", "3[41]2"], oeis: "A078482" },
    TableRow { case: 5, entry: "123457", perm_patterns: &["2143"], oeis: "A033321" },
    TableRow { case: 6, entry: "123458", perm_patterns: &["2[14]3", "45312"], oeis: "A363810" },
    TableRow { case: 7, entry: "123478", perm_patterns: &["21354", "45312"], oeis: "A363811" },
    TableRow { case: 8, entry: "1234567", perm_patterns: &["2143", "3[41]2"], oeis: "A363812" },
    TableRow { case: 9, entry: "1234578", perm_patterns: &["2143", "45312"], oeis: "A363813" },
    TableRow { case: 10, entry: "12345678", perm_patterns: &["2143", "3412"], oeis: "A006012" },
];

/// Vortices: only P2 allowed.
pub const VORTEX_ENTRY: &str = "1345678";
pub const VORTEX_OEIS: &str = "A026029";
/// Whirls (vortices with a windmill) are counted by this sequence.
pub const WHIRL_OEIS: &str = "A002057";
/// All rectangulations.
pub const ALL_OEIS: &str = "A342141";
/// Pattern-set string for all rectangulations (nothing avoided).
pub const UNIVERSAL_ENTRY: &str = "none";

pub fn row_by_entry(entry: &str) -> Option<&'static TableRow> {
    ROWS.iter().find(|r| r.entry == entry)
}

pub fn row_by_case(case: u8) -> Option<&'static TableRow> {
    ROWS.iter().find(|r| r.case == case)
}

/// Pattern-set strings accepted on the command line: table entries, the vortex set and
/// [`UNIVERSAL_ENTRY`].
pub fn parse_entry(s: &str) -> Result<PatternSet> {
    if s == UNIVERSAL_ENTRY {
        return Ok(PatternSet::EMPTY);
    }
    if row_by_entry(s).is_some() || s == VORTEX_ENTRY || s == "12345678" {
        s.parse()
    } else {
        Err(Error::UnknownRow(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_parse() {
        for r in &ROWS {
            assert!(r.avoid().is_superset(PatternSet::BASE));
            assert_eq!(r.vincular().len(), r.perm_patterns.len());
        }
        assert!(parse_entry("1345678").is_ok());
        assert_eq!(parse_entry("none").unwrap(), PatternSet::EMPTY);
        assert!(matches!(parse_entry("1235"), Err(Error::UnknownRow(_))));
        assert_eq!(row_by_entry("123478").unwrap().case, 7);
    }
}
