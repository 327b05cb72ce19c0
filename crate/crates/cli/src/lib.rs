//! Command-line front end for `qnetbound`: chain and network bounds,
//! repeater simulation, distance sweeps and routing.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod netfile;
pub mod sweep;

pub use commands::{run, Cli};
pub use error::CliError;
