//! Command-line front end for `boso-core`: TOML job configs, the built-in
//! example registry, and JSON/CSV/TeX reports.

pub mod config;
pub mod emit;
pub mod report;
pub mod run;

pub use config::JobConfig;
pub use emit::{emit, Format};
pub use report::RunReport;
pub use run::{run, Command, Options};

/// Process exit status for a finished run.
pub fn exit_code(r: &RunReport) -> i32 {
    if r.passed {
        0
    } else {
        1
    }
}

/// Exit status for input errors.
pub const EXIT_INPUT: i32 = 2;
