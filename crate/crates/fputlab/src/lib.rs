//! Experiment driver tying the exact solver crates to the numerical ones.
//!
//! The library side carries the runners behind each `fputlab` subcommand and
//! the report machinery they share; the binary adds argument parsing,
//! validation, and file output on top. Tests drive the same runners
//! in-process, so the command-line tool and the test suite cannot drift
//! apart.

pub mod data;
pub mod report;
pub mod runners;
