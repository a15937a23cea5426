//! Library surface of the `ifsw` command-line tool: spec-file parsing, the
//! worked-example registry, and the command implementations. The binary in
//! `main.rs` is a thin clap dispatcher over [`commands`].

pub mod commands;
pub mod registry;
pub mod spec_file;

pub use commands::{
    run_examples, run_staircase, run_symbolic, run_validate, run_w1, CliError, ExamplesArgs,
    StaircaseArgs, SymbolicArgs, W1Args, EXIT_FAILED_EXPECTATION, EXIT_IO, EXIT_OK, EXIT_PARSE,
};
