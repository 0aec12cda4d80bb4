//! Command-line front end: germ-spec loading, subcommand dispatch and report
//! emission.
//!
//! Exit codes: 0 when every requested certificate or verdict holds, 1 on a
//! violation (failed certificate, critical points found, germ not
//! quasi-homogeneous, failed equivalence check), 2 on usage, parse or I/O
//! errors.

mod commands;
pub mod report;
pub mod spec;

pub use commands::{run, Outcome};
