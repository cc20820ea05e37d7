//! Pseudospectral laboratory for the viscous nonlinear wave equation
//!
//! ```text
//! ∂ₜ²u − Δu + √(−Δ) ∂ₜu = −u^k    on 𝕋^d = (ℝ/ℤ)^d
//! ```
//!
//! Fields live on a truncated integer frequency lattice. The linear part is
//! solved exactly by Fourier multipliers, the nonlinearity through the Duhamel
//! operator `I_k`, and solutions are expanded in Picard iterates `Ξ_j`.
//!
//! Modules, bottom-up:
//! - [`spectral_core`]: lattice, fields, norms, multipliers, dealiased products.
//! - [`data_factory`]: box-supported high-frequency data and smooth backgrounds.
//! - [`picard`]: Duhamel quadrature, trees, iterates, series and contraction solvers.
//! - [`estimates`]: thresholds, exact time integrals, the closed-form first iterate.
//! - [`regimes`]: parameter planners with inequality ledgers.
//! - [`harness`]: experiment drivers, reports, configuration.

// `!(x >= a)` is used on purpose: it rejects NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod data_factory;
pub mod error;
pub mod estimates;
pub mod harness;
pub mod picard;
pub mod regimes;
pub mod spectral_core;

pub use error::{Error, Result};
pub use num_complex::Complex64;
