//! Scenario files, the counterexample search and the reports behind the
//! `normkeep` command-line tool.

pub mod cli;
pub mod error;
pub mod report;
pub mod run;
pub mod scenario;
pub mod search;
