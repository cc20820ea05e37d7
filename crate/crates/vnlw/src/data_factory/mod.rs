//! Box-supported high-frequency data and smooth low-frequency backgrounds.
//!
//! The high-frequency data is φ̂ = R·1_Ω with Ω = ⋃_{η∈Σ} (η + Q_A) and
//! Q_A = [−A/8, A/8]^d, paired with zero velocity.

mod background;
mod boxes;

pub use background::{background_data, BACKGROUND_RADIUS};
pub(crate) use boxes::box_offsets;
pub use boxes::{
    box_half_width, build_adversarial, build_sigma, describe, perturbation_distance, zero_sum_tuple_count,
    AdversarialData, BoxSpec, DataDescription, PerturbationDistance, Variant,
};
