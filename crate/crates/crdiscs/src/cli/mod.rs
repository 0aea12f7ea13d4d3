//! Command-line front end: configuration parsing, the classify / attach /
//! family commands, CSV and SVG emission.

pub mod config;
pub mod report;
pub mod run;
pub mod svg;

/// CLI failure categories, mapped to documented exit codes:
/// 2 config/validation, 3 solver, 4 construction. Exit code 1 is reserved
/// for runs that complete but fail an invariant audit.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(String),
    Construction(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Construction(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Solver(m) | CliError::Construction(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

impl std::error::Error for CliError {}
