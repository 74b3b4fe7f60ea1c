//! Command-line front end for `qdiv`: state and unitary files, divergence
//! tables, preserver reconstruction and seeded property suites.

pub mod error;
pub mod io;
pub mod oracle;
pub mod suite;
pub mod tolerance;

pub use error::{CliError, CliResult};
