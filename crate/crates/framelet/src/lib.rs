//! File formats, export and the command-line tool around `framelet-core`.

pub mod bankfile;
pub mod cli;
pub mod export;
