//! Truncated Fourier representation on 𝕋^d, norms and the linear propagator.
//!
//! Convention: 𝕋 = ℝ/ℤ, u(x) = Σ_ξ û(ξ) e^{2πi ξ·x}, and the multipliers use
//! |ξ| with no 2π factor. Norms are lattice sums with unit weights.

mod field;
mod lattice;
mod multipliers;
mod norms;
mod power;
pub mod snapshot;
mod xt;

pub use field::{FieldPair, SpectralField};
pub use lattice::{Freq, FrequencyLattice};
pub use multipliers::{apply_linear_flow, multiplier_by_abs, multiplier_value, Multiplier, SQRT3_2};
pub use norms::{fl_norm, fl01_pair_norm, hs_norm, hs_pair_norm, norm, SobolevIndex};
pub use power::{pointwise_power, ProductEngine};
pub use xt::{xt_norm, XtNorms};

/// Japanese bracket ⟨ξ⟩ = (1 + |ξ|²)^{1/2}.
#[inline]
pub fn bracket(abs: f64) -> f64 {
    (1.0 + abs * abs).sqrt()
}
