//! Batch front end for `gvbimod`: workspace documents, reports and suites.

pub mod report;
pub mod run;
pub mod suites;
pub mod workspace;
