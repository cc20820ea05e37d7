use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use super::integrator::duhamel_on_grid;
use super::iterates::IterateTrajectory;
use crate::spectral_core::{apply_linear_flow, fl01_pair_norm, fl_norm, FieldPair, ProductEngine, SpectralField};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesOptions {
    pub tol: f64,
    pub j_cap: usize,
    pub grid: GridSpec,
    /// Refuse T > c·min(M^{−(k−1)/2}, 1) when set; M is the F⃗L¹ norm of the data.
    pub time_safety: Option<f64>,
}

impl SeriesOptions {
    pub fn new(tol: f64, j_cap: usize, grid: GridSpec) -> Self {
        Self { tol, j_cap, grid, time_safety: Some(0.01) }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesSolution {
    pub iterates: IterateTrajectory,
    /// M = ‖(u₀, u₁)‖_{F⃗L¹}
    pub data_norm: f64,
    /// sup_t ‖Ξ_j(t)‖_{FL⁰¹} for each computed level
    pub level_norms: Vec<f64>,
    /// level_norms[j] / level_norms[j−1], from j = 1
    pub ratios: Vec<f64>,
    /// Geometric tail estimate for Σ_{j>J} Ξ_j
    pub tail: f64,
    pub converged: bool,
    /// sup_t ‖u_J − V(t)u⃗₀ − I_k(u_J)‖_{FL⁰¹}
    pub residual: f64,
}

impl SeriesSolution {
    pub fn levels_used(&self) -> usize {
        self.iterates.j_max()
    }

    /// u_J at every grid node.
    pub fn solution(&self) -> Result<Vec<SpectralField>> {
        self.iterates.partial_sums(self.iterates.j_max())
    }
}

fn tail_estimate(norms: &[f64]) -> (f64, f64) {
    let last = *norms.last().unwrap();
    if last == 0.0 {
        return (0.0, 0.0);
    }
    let n = norms.len();
    // the worst of the last two ratios
    let q = (n.saturating_sub(2).max(1)..n).map(|j| norms[j] / norms[j - 1]).fold(0.0, f64::max);
    let tail = if q < 1.0 { last * q / (1.0 - q) } else { f64::INFINITY };
    (q, tail)
}

/// max over nodes of ‖u − V(t)u⃗₀ − I_k(u)‖_{FL⁰¹}.
pub(crate) fn duhamel_residual(
    u: &[SpectralField],
    pair: &FieldPair,
    k: usize,
    grid: &super::grid::TimeGrid,
) -> Result<f64> {
    let engine = ProductEngine::new(*pair.lattice(), k)?;
    let forcing = u
        .iter()
        .map(|f| {
            let refs = vec![f; k];
            engine.product(&refs)
        })
        .collect::<Result<Vec<_>>>()?;
    let duhamel = duhamel_on_grid(grid, &forcing)?;
    let mut worst: f64 = 0.0;
    for (q, &t) in grid.times().iter().enumerate() {
        let mut r = u[q].clone();
        r.axpy(-1.0, &apply_linear_flow(t, pair)?)?;
        r.axpy(-1.0, &duhamel[q])?;
        worst = worst.max(fl_norm(&r, 0.0, 1.0)?);
    }
    Ok(worst)
}

/// Truncated power series u_J = Σ_{j ≤ J} Ξ_j on [0, T].
///
/// Levels are added until the geometric tail estimate drops below `tol` or
/// `j_cap` is reached. A successive-level ratio ≥ 1 after level 2 is reported
/// as divergence with the level norms.
pub fn solve_series(pair: &FieldPair, k: usize, t_end: f64, opts: &SeriesOptions) -> Result<SeriesSolution> {
    let m = fl01_pair_norm(pair);
    if let Some(c) = opts.time_safety {
        let limit = c * m.powf(-((k - 1) as f64) / 2.0).min(1.0);
        if t_end > limit {
            return Err(Error::Regime(format!(
                "T = {t_end:.3e} exceeds {c}·min(M^(-(k-1)/2), 1) = {limit:.3e} for M = {m:.3e}"
            )));
        }
    }
    let grid = opts.grid.build(t_end)?;
    let mut iterates = IterateTrajectory::start(pair, k, grid)?;
    let mut norms = vec![iterates.sup_fl01(0)?];
    let mut converged = norms[0] == 0.0;
    while !converged && iterates.j_max() < opts.j_cap {
        iterates.push_level()?;
        norms.push(iterates.sup_fl01(iterates.j_max())?);
        let (q, tail) = tail_estimate(&norms);
        if norms.len() >= 3 && q >= 1.0 {
            return Err(Error::Divergence(format!("level ratio {q:.3} ≥ 1; sup FL01 norms by level {norms:?}")));
        }
        converged = norms.len() >= 3 && tail <= opts.tol;
    }
    let (_, tail) = if norms.len() >= 2 { tail_estimate(&norms) } else { (0.0, if norms[0] == 0.0 { 0.0 } else { f64::INFINITY }) };
    let ratios = norms.windows(2).map(|w| if w[0] == 0.0 { 0.0 } else { w[1] / w[0] }).collect();
    let u = iterates.partial_sums(iterates.j_max())?;
    let residual = duhamel_residual(&u, pair, k, iterates.grid())?;
    Ok(SeriesSolution { iterates, data_norm: m, level_norms: norms, ratios, tail, converged, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::FrequencyLattice;
    use num_complex::Complex64;

    fn single_mode(lat: FrequencyLattice, a: f64) -> FieldPair {
        let u0 = SpectralField::from_modes(lat, &[([3, 0, 0], Complex64::new(a, 0.0)), ([-3, 0, 0], Complex64::new(a, 0.0))])
            .unwrap();
        FieldPair::new(u0, SpectralField::zeros(lat)).unwrap()
    }

    #[test]
    fn zero_data() {
        let lat = FrequencyLattice::new(1, 8).unwrap();
        let sol = solve_series(&FieldPair::zeros(lat), 2, 0.005, &SeriesOptions::new(1e-12, 6, GridSpec::uniform(0.002))).unwrap();
        assert!(sol.converged);
        assert_eq!(sol.residual, 0.0);
        assert_eq!(sol.levels_used(), 0);
    }

    #[test]
    fn small_data_converges_geometrically() {
        let lat = FrequencyLattice::new(1, 24).unwrap();
        let pair = single_mode(lat, 1.0);
        let m = fl01_pair_norm(&pair);
        let t = 0.01 * m.powf(-0.5);
        let tol = 1e-12;
        let sol = solve_series(&pair, 2, t, &SeriesOptions::new(tol, 8, GridSpec::uniform(t / 4.0))).unwrap();
        assert!(sol.converged);
        assert!(sol.ratios.windows(2).skip(1).all(|w| w[1] < 1.0));
        assert!(sol.residual <= 10.0 * tol, "{}", sol.residual);
    }

    #[test]
    fn refuses_large_time() {
        let lat = FrequencyLattice::new(1, 8).unwrap();
        let pair = single_mode(lat, 1.0);
        assert!(matches!(
            solve_series(&pair, 2, 1.0, &SeriesOptions::new(1e-12, 4, GridSpec::uniform(0.1))),
            Err(Error::Regime(_))
        ));
    }
}
