//! Experiment runner behind the `dyncov` binary.

pub mod config;
pub mod report;
pub mod scenarios;
