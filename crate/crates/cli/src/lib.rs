//! Front end of the `dualpolar` command.

pub mod config;
pub mod emit;
pub mod pipeline;
pub mod report;
pub mod sweep;

pub use config::{CliError, Instance, RunConfig};
pub use emit::{emit, Emitted};
pub use pipeline::verify;
pub use report::{Stage, Status, VerificationReport};
pub use sweep::{sweep, SweepSummary};
