//! Exact enumeration of pattern-avoiding rectangulations.
//!
//! Three independent routes to the same numbers: brute-force geometry ([`generators::oracle`]),
//! the bijection with separable permutations ([`bijection`], [`perm`]), and exact
//! power-series algebra ([`series`]).

pub mod bijection;
pub mod error;
pub mod generators;
pub mod oeis;
pub mod geometry;
pub mod patterns;
pub mod perm;
pub mod series;
pub mod table;

pub use error::{Error, Result};
pub use geometry::{canonicalize, CanonicalCode, Drawing, Rect, SegmentStructure};
pub use patterns::{PatternId, PatternSet};
pub use perm::{Permutation, SeparableTree, VincularPattern};
