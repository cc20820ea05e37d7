//! Parameter planners for the inflation and C^k-failure regimes.
//!
//! Every "≪" becomes a ledger entry lhs·margin ≤ rhs evaluated at a concrete N.

mod ck;
mod long_time;
mod plan;
mod short_time;

pub use ck::{ck_growth_exponent, indicator_norm, plan_ck_failure};
pub use long_time::{plan_long_time, plan_long_time_calibrated, rho_window, Calibration, RhoWindow};
pub use plan::{check_ledger, LedgerEntry, LedgerReport, RegimePlan, Relation, Window, DEFAULT_MARGIN};
pub use short_time::{plan_short_time, short_time_case, ShortTimeCase};
