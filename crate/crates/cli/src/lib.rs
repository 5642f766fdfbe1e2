//! Library side of the `qcm` binary: instance files, the subcommands and
//! their report rendering.

pub mod commands;
pub mod failure;
pub mod file;
pub mod render;

pub use commands::{Options, Outcome, Selector, Status};
pub use failure::Failure;
pub use file::{InstanceFile, WitnessFile};
