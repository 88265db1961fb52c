//! File formats, plots and the `grasp-gauge` command line on top of
//! [`grasp_gauge_core`].

pub mod ingest;
pub mod json;
pub mod render;
pub mod cli;
