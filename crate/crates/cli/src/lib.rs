//! Command-line front end: builtin catalog, JSON inputs, TSV reports and
//! the verification suites.

pub mod catalog;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod suites;
