//! Command line, file formats and parallel drivers over `mf-core`.

pub mod cache;
pub mod cli;
pub mod record;
pub mod search;
pub mod sweeps;
