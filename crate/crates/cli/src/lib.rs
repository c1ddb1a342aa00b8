//! Library side of the `hopfcyc` command: algebra files, suites and reports.

pub mod app;
pub mod file;
pub mod suites;
