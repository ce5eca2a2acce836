//! File-based pipelines around `rewire-core`: edge-list and circuit file
//! formats, trace CSV and metadata output, and the `expander-rewire`
//! command line.

pub mod circuit;
pub mod commands;
pub mod edgelist;
pub mod error;
pub mod format;
pub mod plot;
pub mod trace;

pub use error::{CliError, Result};
