//! Command-line front end: build representations, analyze them, and run the
//! verification suites.

pub mod app;
pub mod parse;
pub mod suite;
