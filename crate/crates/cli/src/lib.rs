//! Command dispatch and the self-test runner for `kuga-satake`.

mod commands;
pub mod selftest;

pub use commands::{
    run_command, Outcome, EXIT_CONFIG, EXIT_CONSTRUCTION, EXIT_OK, EXIT_VALIDATION,
};
