//! Command-line front end for spectral-zeta: solvers, zeta evaluation,
//! identity suites and the acceptance report.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod output;
pub mod report;
pub mod verify;
