//! File formats, exporters, wall-clock budgets and the command-line driver
//! for [`boxchroma_core`].

pub mod cli;
pub mod export;
pub mod fixtures;
pub mod format;
pub mod timer;

pub use export::{export, Explode, ExportFormat};
pub use fixtures::{fixture, Fixture, FIXTURES};
pub use format::{parse_appendix, AppendixRecord, ConfigDocument, CuboidEntry, ParseError, ParseWarning};
pub use timer::TimeBudget;
