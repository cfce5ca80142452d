//! File format, corpus handling, and the theorem-suite driver behind the
//! `khr` command-line tool.

pub mod corpus;
pub mod format;
pub mod generate;
pub mod report;
pub mod suite;
