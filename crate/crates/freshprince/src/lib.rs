//! File formats, the experiment runner, comparison reports and the command
//! line for the `freshprince-core` toolkit.

pub mod cli;
pub mod compare;
pub mod config;
pub mod error;
pub mod exec;
pub mod feature_csv;
pub mod model_file;
pub mod results;
pub mod runner;
pub mod tsfile;

pub use error::{ExitCode, FormatError};
pub use exec::RayonExecutor;
