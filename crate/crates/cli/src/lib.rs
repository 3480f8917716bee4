//! Command-line front end for dkibo: experiment files, trial fan-out, CSV
//! output, and the ask/tell workflow for objectives evaluated outside the
//! process.

pub mod asktell;
pub mod config;
pub mod exit;
pub mod output;
pub mod run;

pub use config::{ExperimentFile, ExperimentSpec};
pub use exit::{Code, Failure};
pub use run::{run_experiments, RunReport};
