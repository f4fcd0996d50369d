//! Experiment harness behind the `dynobj` binary: configuration, artifact
//! store, subcommand implementations and plot emission.

pub mod commands;
pub mod config;
pub mod plot;
pub mod store;
