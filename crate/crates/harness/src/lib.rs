//! Command-line front end and acceptance runner for `biclique-core`.

pub mod acceptance;
pub mod cli;
pub mod config;
pub mod format;
pub mod report;
