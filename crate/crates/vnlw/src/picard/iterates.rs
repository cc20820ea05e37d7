use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{GridSpec, TimeGrid};
use super::integrator::duhamel_on_grid;
use super::trajectory::FieldTrajectory;
use crate::spectral_core::{apply_linear_flow, fl_norm, hs_norm, FieldPair, FrequencyLattice, ProductEngine, SpectralField};
use crate::{Error, Result};

/// Non-decreasing k-tuples summing to `total`, each with its count of orderings.
pub(crate) fn multisets(total: usize, k: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(rest: usize, slots: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in min..=rest {
            if v * slots > rest {
                break;
            }
            cur.push(v);
            rec(rest - v, slots - 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, k, 0, &mut Vec::new(), &mut out);
    let fact = |n: usize| (1..=n).map(|x| x as f64).product::<f64>();
    out.into_iter()
        .map(|m| {
            let mut mult = fact(k);
            let mut i = 0;
            while i < m.len() {
                let j = m[i..].iter().take_while(|&&x| x == m[i]).count();
                mult /= fact(j);
                i += j;
            }
            (m, mult)
        })
        .collect()
}

/// Σ over compositions l₁+⋯+l_k = total of Π Ξ_{lᵢ}, evaluated in physical space.
pub(crate) fn level_forcing(engine: &ProductEngine, levels: &[&SpectralField], total: usize, k: usize) -> Result<SpectralField> {
    let phys = levels.iter().map(|f| engine.to_physical(f)).collect::<Result<Vec<_>>>()?;
    let mut acc = vec![Complex64::new(0.0, 0.0); phys[0].len()];
    for (m, mult) in multisets(total, k) {
        for (x, slot) in acc.iter_mut().enumerate() {
            let mut p = Complex64::new(mult, 0.0);
            for &l in &m {
                p *= phys[l][x];
            }
            *slot += p;
        }
    }
    Ok(engine.from_physical(acc))
}

/// Picard iterates Ξ₀, …, Ξ_J at every node of one time grid.
#[derive(Clone, Debug)]
pub struct IterateTrajectory {
    k: usize,
    grid: TimeGrid,
    /// levels[j][q] = Ξ_j(t_q)
    levels: Vec<Vec<SpectralField>>,
}

/// Ξ₀ = V(t)·pair and Ξ_j = Σ_{l₁+⋯+l_k=j−1} I_k(Ξ_{l₁}, …, Ξ_{l_k}) on `grid`.
pub fn xi_iterates_on(pair: &FieldPair, k: usize, grid: TimeGrid, j_max: usize) -> Result<IterateTrajectory> {
    let mut out = IterateTrajectory::start(pair, k, grid)?;
    for _ in 0..j_max {
        out.push_level()?;
    }
    Ok(out)
}

/// [`xi_iterates_on`] on the grid `spec` lays out over [0, T].
pub fn xi_iterates(pair: &FieldPair, k: usize, t_end: f64, j_max: usize, spec: &GridSpec) -> Result<IterateTrajectory> {
    xi_iterates_on(pair, k, spec.build(t_end)?, j_max)
}

/// One row of the trajectory CSV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSample {
    pub j: usize,
    pub t: f64,
    pub hs_norm: f64,
    pub fl01_norm: f64,
}

impl IterateTrajectory {
    /// Only Ξ₀ computed.
    pub fn start(pair: &FieldPair, k: usize, grid: TimeGrid) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("nonlinearity degree k = {k} < 2")));
        }
        let base = grid.times().iter().map(|&t| apply_linear_flow(t, pair)).collect::<Result<Vec<_>>>()?;
        Ok(Self { k, grid, levels: vec![base] })
    }

    /// Computes Ξ_{J+1} from Ξ₀, …, Ξ_J.
    pub fn push_level(&mut self) -> Result<()> {
        let j = self.levels.len();
        let engine = ProductEngine::new(self.lattice(), self.k)?;
        let levels = &self.levels;
        let k = self.k;
        let forcing = (0..self.grid.len())
            .into_par_iter()
            .map(|q| {
                let lower: Vec<&SpectralField> = levels.iter().map(|l| &l[q]).collect();
                level_forcing(&engine, &lower, j - 1, k)
            })
            .collect::<Result<Vec<_>>>()?;
        let next = duhamel_on_grid(&self.grid, &forcing)?;
        self.levels.push(next);
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn lattice(&self) -> FrequencyLattice {
        *self.levels[0][0].lattice()
    }

    pub fn j_max(&self) -> usize {
        self.levels.len() - 1
    }

    /// Ξ_j at every node.
    pub fn level(&self, j: usize) -> &[SpectralField] {
        &self.levels[j]
    }

    fn check_level(&self, j: usize) -> Result<()> {
        if j > self.j_max() {
            return Err(Error::Domain(format!("level {j} beyond computed {}", self.j_max())));
        }
        Ok(())
    }

    /// Ξ_j(t): exact at nodes, panel-polynomial interpolation elsewhere.
    pub fn level_at(&self, j: usize, t: f64) -> Result<SpectralField> {
        self.check_level(j)?;
        if let Some(q) = self.grid.node_at(t) {
            return Ok(self.levels[j][q].clone());
        }
        let (p, w) = self.grid.interpolation(t)?;
        let mut out = SpectralField::zeros(self.lattice());
        for (i, wi) in w.iter().enumerate() {
            out.axpy(*wi, &self.levels[j][self.grid.node(p, i)])?;
        }
        Ok(out)
    }

    /// Σ_{j ≤ J} Ξ_j(t).
    pub fn partial_sum_at(&self, j_last: usize, t: f64) -> Result<SpectralField> {
        self.check_level(j_last)?;
        let mut out = SpectralField::zeros(self.lattice());
        for j in 0..=j_last {
            out.axpy(1.0, &self.level_at(j, t)?)?;
        }
        Ok(out)
    }

    /// Σ_{j ≤ J} Ξ_j at every node.
    pub fn partial_sums(&self, j_last: usize) -> Result<Vec<SpectralField>> {
        self.check_level(j_last)?;
        (0..self.grid.len())
            .map(|q| SpectralField::sum(self.lattice(), self.levels[..=j_last].iter().map(|l| &l[q])))
            .collect()
    }

    /// sup over nodes of ‖Ξ_j‖_{FL⁰¹}
    pub fn sup_fl01(&self, j: usize) -> Result<f64> {
        self.check_level(j)?;
        self.levels[j].iter().map(|f| fl_norm(f, 0.0, 1.0)).try_fold(0.0, |m, v| v.map(|v| f64::max(m, v)))
    }

    /// Level norms at every node, ordered by level then time.
    pub fn samples(&self, s: f64) -> Result<Vec<LevelSample>> {
        let mut out = Vec::new();
        for (j, level) in self.levels.iter().enumerate() {
            for (f, &t) in level.iter().zip(self.grid.times()) {
                out.push(LevelSample { j, t, hs_norm: hs_norm(f, s), fl01_norm: fl_norm(f, 0.0, 1.0)? });
            }
        }
        Ok(out)
    }

    /// CSV with header `j,t,hs_norm,fl01_norm`.
    pub fn write_csv<W: Write>(&self, s: f64, mut w: W) -> Result<()> {
        writeln!(w, "j,t,hs_norm,fl01_norm")?;
        for row in self.samples(s)? {
            writeln!(w, "{},{:e},{:e},{:e}", row.j, row.t, row.hs_norm, row.fl01_norm)?;
        }
        Ok(())
    }

    /// Level `j` viewed as a [`FieldTrajectory`].
    pub fn level_view(&self, j: usize) -> Result<LevelView<'_>> {
        self.check_level(j)?;
        Ok(LevelView { traj: self, j })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LevelView<'a> {
    traj: &'a IterateTrajectory,
    j: usize,
}

impl FieldTrajectory for LevelView<'_> {
    fn lattice(&self) -> FrequencyLattice {
        self.traj.lattice()
    }

    fn end(&self) -> f64 {
        self.traj.grid.end()
    }

    fn at(&self, t: f64) -> Result<SpectralField> {
        self.traj.level_at(self.j, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::trees::{compositions, enumerate_trees, eval_tree_on_grid};

    fn pair(lat: FrequencyLattice) -> FieldPair {
        let u0 = SpectralField::from_modes(
            lat,
            &[([1, 0, 0], Complex64::new(0.5, 0.0)), ([-1, 0, 0], Complex64::new(0.5, 0.0)), ([0, 0, 0], Complex64::new(0.3, 0.0))],
        )
        .unwrap();
        let u1 = SpectralField::from_modes(lat, &[([2, 0, 0], Complex64::new(0.0, 0.2)), ([-2, 0, 0], Complex64::new(0.0, -0.2))]).unwrap();
        FieldPair::new(u0, u1).unwrap()
    }

    #[test]
    fn multiplicities_count_compositions() {
        for k in 2..=4 {
            for total in 0..=4 {
                let m: f64 = multisets(total, k).iter().map(|(_, c)| c).sum();
                assert_eq!(m as usize, compositions(total, k).len());
            }
        }
    }

    #[test]
    fn level_zero_starts_at_data() {
        let lat = FrequencyLattice::new(1, 8).unwrap();
        let p = pair(lat);
        let it = xi_iterates(&p, 2, 0.5, 1, &GridSpec::uniform(0.1)).unwrap();
        assert_eq!(it.level(0)[0], p.u0);
        assert!(it.level(1)[0].is_zero());
    }

    #[test]
    fn trees_sum_to_levels() {
        let lat = FrequencyLattice::new(1, 12).unwrap();
        let p = pair(lat);
        let grid = GridSpec::uniform(0.1).build(0.4).unwrap();
        let it = xi_iterates_on(&p, 2, grid.clone(), 3).unwrap();
        for j in 0..=3 {
            let trees = enumerate_trees(j, 2).unwrap();
            let last = grid.len() - 1;
            let mut sum = SpectralField::zeros(lat);
            for t in &trees {
                sum.axpy(1.0, &eval_tree_on_grid(t, &p, &grid).unwrap()[last]).unwrap();
            }
            let err = sum.relative_error(&it.level(j)[last]).unwrap();
            assert!(err < 1e-12, "j = {j}: {err}");
        }
    }

    #[test]
    fn csv_shape() {
        let lat = FrequencyLattice::new(1, 4).unwrap();
        let it = xi_iterates(&pair(lat), 2, 0.2, 2, &GridSpec::uniform(0.1)).unwrap();
        let mut buf = Vec::new();
        it.write_csv(-0.5, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("j,t,hs_norm,fl01_norm"));
        assert_eq!(text.lines().count(), 1 + 3 * it.grid().len());
    }
}
