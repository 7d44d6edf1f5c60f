//! Verification harness for the `fqdist` binary: run configuration, the
//! theorem verifiers, and report emission.

pub mod config;
pub mod error;
pub mod report;
pub mod verify;

pub use config::RunConfig;
pub use error::{HarnessError, Result};
pub use report::{Check, Status, TheoremId, VerificationReport};
