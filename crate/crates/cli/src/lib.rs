//! Library side of the `raman` command-line tool.

pub mod commands;
pub mod error;
pub mod figures;
pub mod output;
pub mod params;
pub mod quantities;
pub mod sweep;
