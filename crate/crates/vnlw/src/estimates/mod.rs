//! Closed-form quantities: thresholds, the exact time integral, phase
//! functions, the first Picard iterate of box data, and predicted bounds.

mod bounds;
mod phase;
mod thresholds;
mod time_integral;
mod xi1;

pub use bounds::{
    conv_box_oracle, g_s, lower_bound_predictions, upper_bound_check, Bracket, FittedConstant, LevelNormSamples,
    LowerBoundParams, Regime, UpperBoundParams,
};
pub use phase::{big_i, big_i_sum, long_time_zero_mode_coefficient, PhaseTuple};
pub use thresholds::{thresholds, Thresholds};
pub use time_integral::{exact_time_integral, exact_time_moment, phi_functions};
pub use xi1::{xi1_closed_form, xi1_closed_form_field, MAX_CLOSED_FORM_TUPLES};
