//! Drawings, their segment structure and strong-equivalence codes.

mod canonical;
mod drawing;
mod segments;

pub use canonical::{canonicalize, equivalent, neighbour_lists, CanonicalCode};
pub use drawing::{Drawing, Rect, ValidationReport, Violation};
pub use segments::{Axis, Face, Junction, SegId, Segment, SegmentStructure, Side};

/// Checked segment extraction.
pub fn extract_segments(d: &Drawing) -> crate::Result<SegmentStructure> {
    SegmentStructure::new(d)
}
