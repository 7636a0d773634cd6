//! Verification suites, computations and batch runs for the Yangian of
//! `gl(M|N)`, shared by the command-line front end and the test targets.

pub mod compute;
pub mod config;
pub mod params;
pub mod report;
pub mod suites;

pub use compute::{compute, ComputeRequest, Target};
pub use config::{batch_exit_code, run_jobs, RunConfig};
pub use params::{Bounds, Guards, Params};
pub use report::{Counterexample, Grammar, Report, Status};
pub use suites::{run_suite, Suite};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("{0}")]
    Usage(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] yangian::Error),
}

impl VerifyError {
    /// Usage and configuration problems exit with 2, computation errors with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Config(_) => 2,
            Self::Core(yangian::Error::Parse { .. } | yangian::Error::InvalidArgument(_) | yangian::Error::SizeGuard(_)) => 2,
            Self::Core(_) => 1,
        }
    }
}
