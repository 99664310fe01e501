//! Scenario loading, orchestration and report output for the `ncpoisson` binary.

pub mod output;
pub mod pipeline;
pub mod scenario;

pub use pipeline::{run, Options, Report, Stage};
pub use scenario::{preset, Scenario};
