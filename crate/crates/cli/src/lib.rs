//! Library half of the benchmark CLI: configuration, sweep runners and
//! output writers, kept separate from argument parsing so the sweeps can be
//! driven directly from tests.

pub mod config;
pub mod outputs;
pub mod render;
pub mod runner;

/// Every selection cell failed; distinguished so the binary can exit with
/// the numerical-failure code.
#[derive(Debug, thiserror::Error)]
#[error("no cell produced a scale estimate: {0}")]
pub struct NumericalFailure(pub String);
