//! Command-line front end, file formats and self-test suite for
//! [`hankel_core`].

pub mod error;
pub mod random;
pub mod records;
pub mod run;
pub mod selftest;
pub mod series_file;

pub use error::CliError;
pub use records::{DetRecord, OutputFormat, Report, ReportRow};
pub use run::RunConfig;
