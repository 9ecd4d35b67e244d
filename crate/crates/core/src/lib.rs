//! Generalised polygons, the codes spanned by their lines over prime fields,
//! and exhaustive checks of blocking-set and minimum-weight properties.

pub mod code;
pub mod constructions;
pub mod field;
pub mod geometry;
pub mod par;
pub mod report;
pub mod traces;
