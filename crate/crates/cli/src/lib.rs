//! Command-line companion to `sextic-core`: JSON views of the sextic family,
//! its singular loci, the vertical-pencil discriminant, and the finite group
//! presentations, plus the end-to-end verification checklist.

pub mod checks;
pub mod fixtures;
pub mod output;
