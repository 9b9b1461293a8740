//! Command-line front end for `qmatcount`: the shape language, report
//! documents and the verification suites, reusable from tests.

pub mod cli;
pub mod report;
pub mod shape;
pub mod suites;
