//! Exact truncated power series and the generating-function checks built on them.

pub mod algebraic;
pub mod cases;
pub mod expr;
pub mod pipeline;
pub mod qseries;
pub mod xpoly;

pub use algebraic::{algebraic_root, algebraic_root_near, catalan};
pub use cases::{solve_system, verify_case, CaseData, CaseSpec, Solution, CaseReport};
pub use expr::{parse, Expr};
pub use pipeline::{asymptotic_ratio, vortex_recurrence, whirl_pipeline, Pipeline};
pub use qseries::QSeries;
pub use xpoly::{closed_form, solve_funceq, tree_census, MPoly, XPoly};
