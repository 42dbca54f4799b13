//! Parallel drivers, report formats and the `blocksets` command line.
//!
//! The algorithms live in [`blocksets_core`]; this crate adds what needs the
//! standard library: a rayon worker pool with schedule-independent merging
//! ([`parallel`]), JSON/CSV/text reports ([`report`]), file formats
//! ([`format`]), colouring spec strings ([`spec`]), the contribution
//! colouring verifier ([`theorem2`]) and the CLI ([`cli`]).

pub mod cli;
mod error;
pub mod format;
pub mod parallel;
pub mod report;
pub mod spec;
pub mod theorem2;

pub use blocksets_core;
pub use error::{Error, Result};
