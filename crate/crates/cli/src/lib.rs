//! Command implementations behind the `quasimarket` binary.
//!
//! Each command returns its CSV text and any diagnostic notes instead of
//! printing, so tests can compare output byte for byte.

pub mod commands;
pub mod format;
pub mod scenario;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] quasimarket::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        }
    }
}

/// What a command produced: CSV for stdout, free text for stderr.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub csv: String,
    pub notes: String,
}
