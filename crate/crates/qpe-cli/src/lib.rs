//! Command-line companion to `qpe-core`.
//!
//! The binary exposes ad-hoc subcommands (`sweep`, `correlate`, `diff`,
//! `gram`, `check`) plus a registry of named experiments that reproduce
//! the published figure data and correlation tables byte-for-byte for a
//! fixed seed.

pub mod experiments;
pub mod output;
pub mod registry;
