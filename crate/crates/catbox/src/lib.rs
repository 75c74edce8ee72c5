//! Operational surface of the cat box: a batch/interactive CLI and a
//! JSON-over-HTTP service hosting box instances.

pub mod cli;
pub mod script;
pub mod service;
