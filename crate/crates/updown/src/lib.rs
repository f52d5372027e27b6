//! File formats, reports and the command line for `updown-core`.
//!
//! Squares travel as JSON [`document::SquareDocument`]s with string cells;
//! CSV is accepted on input for hand-written fixtures. The [`cli`] module
//! holds the `updown` binary's commands so tests can drive them in process.

pub mod cli;
pub mod document;
pub mod report;

mod deadline;

pub use deadline::Deadline;
