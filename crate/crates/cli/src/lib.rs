//! Verification harness for the octonionic F(4) deformed oscillator.
//!
//! The binary is a thin clap front end over [`pipeline`] and [`commands`].

pub mod commands;
pub mod pipeline;
pub mod reference;
pub mod report;

pub use report::{Report, Status};
