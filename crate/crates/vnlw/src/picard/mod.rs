//! Duhamel integrals, Picard iterates Ξ_j, tree expansions and the two
//! nonlinear solvers (power series and contraction).

mod boxwise;
mod contraction;
mod duhamel;
mod grid;
mod integrator;
mod iterates;
mod quadrature;
mod series;
mod trajectory;
mod trees;

pub use boxwise::{xi1_boxwise, BlockField, BoxwiseOptions};
pub use contraction::{contraction_admissible, solve_contraction, ContractionOptions, ContractionSolution, ContractionStep};
pub use duhamel::{duhamel_ik, QuadratureSpec};
pub use grid::{GridSpec, TimeGrid};
pub use integrator::duhamel_on_grid;
pub use iterates::{xi_iterates, xi_iterates_on, IterateTrajectory, LevelSample, LevelView};
pub use quadrature::{gauss_legendre, lobatto_unit};
pub use series::{solve_series, SeriesOptions, SeriesSolution};
pub use trajectory::{FieldTrajectory, Frozen, LinearFlow};
pub use trees::{compositions, enumerate_trees, eval_tree, eval_tree_on_grid, fuss_catalan, Tree, MAX_TREES};
