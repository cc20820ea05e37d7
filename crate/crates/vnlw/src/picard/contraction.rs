use serde::{Deserialize, Serialize};

use super::grid::{GridSpec, TimeGrid};
use super::integrator::duhamel_on_grid;
use crate::estimates::thresholds;
use crate::spectral_core::{apply_linear_flow, xt_norm, FieldPair, ProductEngine, SpectralField, XtNorms};
use crate::{Error, Result};

/// (d, k) pairs where the contraction argument closes.
pub fn contraction_admissible(d: usize, k: usize) -> bool {
    matches!((d, k), (1, 2) | (2, 2) | (3, 2) | (1, 3))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub grid: GridSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub iteration: usize,
    /// ‖u^{(m+1)} − u^{(m)}‖_{X(T)}
    pub distance: f64,
    /// ‖u^{(m+1)}‖_{X(T)}
    pub norm: f64,
}

#[derive(Clone, Debug)]
pub struct ContractionSolution {
    pub grid: TimeGrid,
    /// u(t_q) at every node
    pub values: Vec<SpectralField>,
    pub history: Vec<ContractionStep>,
    /// X(T) norm of Γ(u) − u for the returned u
    pub residual: f64,
}

impl ContractionSolution {
    pub fn iterations(&self) -> usize {
        self.history.len()
    }

    /// Largest ratio of successive distances; 0 when fewer than two steps.
    pub fn max_ratio(&self) -> f64 {
        self.history
            .windows(2)
            .map(|w| if w[0].distance == 0.0 { 0.0 } else { w[1].distance / w[0].distance })
            .fold(0.0, f64::max)
    }

    pub fn final_value(&self) -> &SpectralField {
        self.values.last().unwrap()
    }
}

pub(crate) fn x_norm(grid: &TimeGrid, u: &[SpectralField], s: f64, k: usize) -> Result<XtNorms> {
    xt_norm(grid.times().iter().copied().zip(u.iter()), grid.end(), s, k)
}

fn difference(a: &[SpectralField], b: &[SpectralField]) -> Result<Vec<SpectralField>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let mut d = x.clone();
            d.axpy(-1.0, y)?;
            Ok(d)
        })
        .collect()
}

/// Γ(u)(t) = V(t)u⃗₀ + I_k(u)(t) at every node.
fn gamma(base: &[SpectralField], u: &[SpectralField], engine: &ProductEngine, grid: &TimeGrid) -> Result<Vec<SpectralField>> {
    let k = engine.degree();
    let forcing = u
        .iter()
        .map(|f| {
            let refs = vec![f; k];
            engine.product(&refs)
        })
        .collect::<Result<Vec<_>>>()?;
    let duhamel = duhamel_on_grid(grid, &forcing)?;
    base.iter()
        .zip(duhamel)
        .map(|(b, mut d)| {
            d.axpy(1.0, b)?;
            Ok(d)
        })
        .collect()
}

/// Fixed point of Γ in X(T) by Picard iteration from u^{(0)} = V(t)u⃗₀.
///
/// Stops once the X(T) distance of successive iterates is at most `tol`.
/// Three consecutive increases of that distance count as divergence.
pub fn solve_contraction(pair: &FieldPair, t_end: f64, s: f64, k: usize, opts: &ContractionOptions) -> Result<ContractionSolution> {
    let d = pair.lattice().dim();
    if !contraction_admissible(d, k) {
        return Err(Error::Regime(format!("(d, k) = ({d}, {k}) outside the contraction range")));
    }
    let s_vis = thresholds(d, k)?.s_vis_f64();
    if !(s > s_vis && s <= 0.0) {
        return Err(Error::Regime(format!("s = {s} outside (s_vis, 0] = ({s_vis}, 0]")));
    }
    if !(t_end > 0.0 && t_end < 1.0) {
        return Err(Error::Regime(format!("T = {t_end} outside (0, 1)")));
    }
    let grid = opts.grid.build(t_end)?;
    let engine = ProductEngine::new(*pair.lattice(), k)?;
    let base = grid.times().iter().map(|&t| apply_linear_flow(t, pair)).collect::<Result<Vec<_>>>()?;
    let mut u = base.clone();
    let mut history = Vec::new();
    let mut rising = 0;
    for iteration in 1..=opts.max_iter {
        let next = gamma(&base, &u, &engine, &grid)?;
        let distance = x_norm(&grid, &difference(&next, &u)?, s, k)?.total();
        let norm = x_norm(&grid, &next, s, k)?.total();
        if let Some(prev) = history.last().map(|h: &ContractionStep| h.distance) {
            rising = if distance > prev { rising + 1 } else { 0 };
        }
        history.push(ContractionStep { iteration, distance, norm });
        u = next;
        if rising >= 3 || !distance.is_finite() {
            return Err(Error::Divergence(format!("X(T) distances grew three times in a row: {history:?}")));
        }
        if distance <= opts.tol {
            let residual = x_norm(&grid, &difference(&gamma(&base, &u, &engine, &grid)?, &u)?, s, k)?.total();
            return Ok(ContractionSolution { grid, values: u, history, residual });
        }
    }
    Err(Error::Accuracy {
        message: format!("contraction stopped after {} iterations", opts.max_iter),
        achieved: history.last().map_or(f64::INFINITY, |h| h.distance),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::FrequencyLattice;
    use num_complex::Complex64;

    fn opts() -> ContractionOptions {
        ContractionOptions { tol: 1e-10, max_iter: 50, grid: GridSpec::graded(1e-3, 1.5, 0.02) }
    }

    #[test]
    fn zero_data_in_one_step() {
        let lat = FrequencyLattice::new(1, 8).unwrap();
        let sol = solve_contraction(&FieldPair::zeros(lat), 0.1, -0.25, 2, &opts()).unwrap();
        assert_eq!(sol.iterations(), 1);
        assert_eq!(sol.residual, 0.0);
    }

    #[test]
    fn contracts_for_small_data() {
        let lat = FrequencyLattice::new(1, 16).unwrap();
        let u0 = SpectralField::from_modes(lat, &[([2, 0, 0], Complex64::new(0.2, 0.1)), ([-2, 0, 0], Complex64::new(0.2, -0.1))])
            .unwrap();
        let pair = FieldPair::new(u0, SpectralField::zeros(lat)).unwrap();
        let sol = solve_contraction(&pair, 0.1, -0.25, 2, &opts()).unwrap();
        assert!(sol.max_ratio() <= 0.5);
        assert!(sol.residual <= 10.0 * 1e-10);
    }

    #[test]
    fn rejects_inadmissible() {
        let lat = FrequencyLattice::new(2, 4).unwrap();
        assert!(matches!(solve_contraction(&FieldPair::zeros(lat), 0.1, -0.1, 3, &opts()), Err(Error::Regime(_))));
        let lat = FrequencyLattice::new(1, 4).unwrap();
        assert!(matches!(solve_contraction(&FieldPair::zeros(lat), 0.1, -0.9, 2, &opts()), Err(Error::Regime(_))));
    }
}
