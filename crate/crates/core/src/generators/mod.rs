//! Object generators: the exhaustive oracle, pattern classes, simple whirls and vortices.

pub mod oracle;
pub mod vortex;
pub mod whirl;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bijection::delta_inv;
use crate::error::{Error, Result};
use crate::geometry::{Drawing, SegmentStructure};
use crate::patterns::{self, PatternSet};
use crate::perm::{generate_separable, Permutation};

/// Largest size handled by the δ⁻¹ route.
pub const BIJECTIVE_CEILING: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// δ⁻¹ over separable permutations; only for sets containing P1..P4.
    Bijective,
    /// Filter of the exhaustive oracle.
    Oracle,
}

/// Number of drawings per pattern profile.
pub type Census = BTreeMap<PatternSet, u64>;

pub fn census_count(c: &Census, avoid: PatternSet) -> u64 {
    c.iter().filter(|(p, _)| p.is_disjoint(avoid)).map(|(_, k)| k).sum()
}

/// Profiles of all δ⁻¹ drawings of size `n`.
pub fn census_bijective(n: usize) -> Result<Census> {
    if n == 0 || n > BIJECTIVE_CEILING {
        return Err(Error::BoundExceeded { n, ceiling: BIJECTIVE_CEILING });
    }
    let perms = generate_separable(n);
    let c = perms
        .par_iter()
        .map(|p| {
            let d = delta_inv(p).expect("generated permutations are separable");
            patterns::profile(&SegmentStructure::build(&d))
        })
        .fold(Census::new, |mut m, prof| {
            *m.entry(prof).or_default() += 1;
            m
        })
        .reduce(Census::new, merge);
    Ok(c)
}

/// Profiles of all classes of size `n` from the oracle.
pub fn census_oracle(n: usize) -> Result<Census> {
    let classes = oracle::all_rectangulations(n)?;
    Ok(classes
        .par_iter()
        .map(|c| patterns::profile(&SegmentStructure::build(&c.drawing)))
        .fold(Census::new, |mut m, prof| {
            *m.entry(prof).or_default() += 1;
            m
        })
        .reduce(Census::new, merge))
}

fn merge(mut a: Census, b: Census) -> Census {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

pub fn default_method(n: usize, avoid: PatternSet) -> Method {
    if avoid.is_superset(PatternSet::BASE) && n <= BIJECTIVE_CEILING {
        Method::Bijective
    } else {
        Method::Oracle
    }
}

/// Drawings of size `n` avoiding `avoid`, one per class.
pub fn gen_class(n: usize, avoid: PatternSet, method: Method) -> Result<Vec<Drawing>> {
    match method {
        Method::Bijective => {
            if !avoid.is_superset(PatternSet::BASE) {
                return Err(Error::Parse(format!("δ⁻¹ route needs P1..P4 in the avoided set, got {avoid}")));
            }
            if n == 0 || n > BIJECTIVE_CEILING {
                return Err(Error::BoundExceeded { n, ceiling: BIJECTIVE_CEILING });
            }
            let extra = avoid.minus(PatternSet::BASE);
            Ok(generate_separable(n)
                .par_iter()
                .map(|p: &Permutation| delta_inv(p).expect("separable"))
                .filter(|d| patterns::avoids(&SegmentStructure::build(d), extra))
                .collect())
        }
        Method::Oracle => Ok(oracle::all_rectangulations(n)?
            .into_iter()
            .map(|c| c.drawing)
            .filter(|d| patterns::avoids(&SegmentStructure::build(d), avoid))
            .collect()),
    }
}

pub fn count_class(n: usize, avoid: PatternSet, method: Method) -> Result<u64> {
    let census = match method {
        Method::Bijective => {
            if !avoid.is_superset(PatternSet::BASE) {
                return Err(Error::Parse(format!("δ⁻¹ route needs P1..P4 in the avoided set, got {avoid}")));
            }
            census_bijective(n)?
        }
        Method::Oracle => census_oracle(n)?,
    };
    Ok(census_count(&census, avoid))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_examples() {
        let base = PatternSet::BASE;
        assert_eq!(count_class(5, base, Method::Bijective).unwrap(), 90);
        assert_eq!(count_class(5, base, Method::Oracle).unwrap(), 90);
        assert_eq!(count_class(6, PatternSet::ALL, Method::Bijective).unwrap(), 232);
        let vortex: PatternSet = "1345678".parse().unwrap();
        assert_eq!(count_class(5, vortex, Method::Oracle).unwrap(), 69);
        assert!(gen_class(4, vortex, Method::Bijective).is_err());
    }

    #[test]
    fn gen_class_matches_count() {
        let s: PatternSet = "123457".parse().unwrap();
        for n in 1..=6 {
            let a = gen_class(n, s, Method::Bijective).unwrap().len() as u64;
            let b = gen_class(n, s, Method::Oracle).unwrap().len() as u64;
            assert_eq!(a, b, "n={n}");
        }
    }
}
