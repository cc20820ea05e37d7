//! Experiment drivers, reports and run configuration.
//!
//! Every runner validates its regime first and refuses with
//! [`crate::Error::Regime`] rather than extrapolating. Reports carry raw
//! samples, log-log fits, dominance ratios and named checks; the verdict is
//! true only when all of them pass.

mod ck;
mod config;
mod fit;
mod laws;
mod long_time;
mod report;
mod short_time;
mod verify;
mod wellposedness;

pub use ck::run_ck_failure;
pub use config::Config;
pub use fit::{log_log_fit, Fit};
pub use laws::{bracket_tuples, eps_sum_bracket, flips_ok, run_long_time_law, threshold_flips, BracketRow, FlipRow};
pub use long_time::{minimal_long_time_n, run_long_time_inflation, LongTimeRun};
pub use report::{emit_report, Check, Dominance, ExperimentParams, ExperimentReport, Format, Sample, CSV_HEADER, SCHEMA_VERSION};
pub use short_time::{run_short_time_inflation, RRule, ShortTimeRun};
pub use verify::{verify, VerifyReport};
pub use wellposedness::{run_wellposedness, schauder_constants, SchauderFit, WellposednessRun};
