//! Verification harness for the `biquat` library: a registry of suites, a
//! deterministic runner and report serialization.

pub mod coverage;
pub mod registry;
pub mod report;
pub mod suites;

pub use registry::{run, run_with, RunConfig, VerifyError};
pub use report::{Backend, Report, Status, SuiteResult};
