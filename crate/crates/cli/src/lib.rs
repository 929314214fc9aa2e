//! File formats, reference oracles, random instance generators and the
//! identity battery for [`eulercalc`], plus the command implementations
//! used by the `eulercalc` binary.

pub mod commands;
pub mod document;
pub mod error;
pub mod gen;
pub mod oracle;
pub mod suite;

pub use error::{CliError, CliResult};
