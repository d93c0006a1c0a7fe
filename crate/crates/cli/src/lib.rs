//! Library surface of the command-line driver: JSON wire formats and command
//! implementations, reused by the binary and the integration tests.

pub mod commands;
pub mod wire;
