use serde::{Deserialize, Serialize};

use super::config::Config;
use super::report::{Check, ExperimentParams, ExperimentReport, Sample};
use crate::data_factory::background_data;
use crate::estimates::thresholds;
use crate::picard::{contraction_admissible, solve_contraction, ContractionOptions, ContractionSolution, GridSpec};
use crate::spectral_core::{fl_norm, hs_norm, hs_pair_norm, xt_norm, FieldPair, FrequencyLattice, SpectralField};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WellposednessRun {
    pub d: usize,
    pub k: usize,
    pub s: f64,
    /// Data is the seeded background scaled by this.
    pub scale: f64,
    pub t_end: f64,
    /// Relative size of the first perturbation; the second is half of it.
    pub perturbation: f64,
    /// Smoothing orders σ for the p = q = 2 Schauder cases.
    pub schauder_sigma: Vec<f64>,
}

impl WellposednessRun {
    pub fn new(d: usize, k: usize, s: f64) -> Self {
        Self { d, k, s, scale: 0.1, t_end: 0.25, perturbation: 1e-2, schauder_sigma: vec![0.0, 0.5, 1.0] }
    }
}

fn lattice_for(d: usize) -> Result<FrequencyLattice> {
    FrequencyLattice::new(d, [16, 8, 6][d - 1])
}

/// Fitted constant in ‖D^σ P(t) u‖_{L^q} ≤ C t^{−σ−d(1/p−1/q)} ‖u‖_{L^p}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchauderFit {
    pub sigma: f64,
    pub p: f64,
    pub q: f64,
    pub t: Vec<f64>,
    /// Operator norm times t^{σ+d(1/p−1/q)} at each t.
    pub constants: Vec<f64>,
}

impl SchauderFit {
    pub fn constant(&self) -> f64 {
        self.constants.iter().cloned().fold(0.0, f64::max)
    }
}

/// Exact lattice operator norms of D^σ P(t) = |ξ|^σ e^{−|ξ|t/2} on 𝕋^d.
///
/// L² → L² is the largest multiplier value; L¹ → L² is the ℓ² norm of the
/// multiplier (the L² norm of the kernel), attained by approximate deltas.
/// The lattice is cut where e^{−|ξ|t_min/2} drops below e^{−20}.
pub fn schauder_constants(d: usize, sigma: f64, p: f64, q: f64, t: &[f64]) -> Result<SchauderFit> {
    if !(sigma >= 0.0) || q != 2.0 || !(p == 1.0 || p == 2.0) {
        return Err(Error::Domain(format!("Schauder case (σ, p, q) = ({sigma}, {p}, {q}) not supported; q = 2, p ∈ {{1, 2}}")));
    }
    let t_min = t.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(t_min > 0.0) {
        return Err(Error::Domain("Schauder sweep needs positive times".into()));
    }
    let m = (40.0 / t_min).ceil() as i64;
    let axis: Vec<i64> = (-m..=m).collect();
    let mut constants = Vec::with_capacity(t.len());
    for &ti in t {
        let mult = |r: f64| if sigma == 0.0 { 1.0 } else { r.powf(sigma) } * (-0.5 * r * ti).exp();
        let mut sup: f64 = 0.0;
        let mut sq = 0.0;
        let mut visit = |r2: i64| {
            let v = mult((r2 as f64).sqrt());
            sup = sup.max(v);
            sq += v * v;
        };
        match d {
            1 => axis.iter().for_each(|a| visit(a * a)),
            2 => axis.iter().for_each(|a| axis.iter().for_each(|b| visit(a * a + b * b))),
            3 => axis.iter().for_each(|a| axis.iter().for_each(|b| axis.iter().for_each(|c| visit(a * a + b * b + c * c)))),
            _ => return Err(Error::Domain(format!("dimension {d} not in 1..=3"))),
        }
        let gain = sigma + d as f64 * (1.0 / p - 1.0 / q);
        let op = if p == 2.0 { sup } else { sq.sqrt() };
        constants.push(op * ti.powf(gain));
    }
    Ok(SchauderFit { sigma, p, q, t: t.to_vec(), constants })
}

fn difference_x(a: &ContractionSolution, b: &ContractionSolution, s: f64, k: usize) -> Result<f64> {
    let diffs = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| {
            let mut d = x.clone();
            d.axpy(-1.0, y)?;
            Ok(d)
        })
        .collect::<Result<Vec<SpectralField>>>()?;
    Ok(xt_norm(a.grid.times().iter().copied().zip(diffs.iter()), a.grid.end(), s, k)?.total())
}

/// Contraction for small data, its Lipschitz dependence, and the smoothing
/// estimate for the Poisson semigroup.
pub fn run_wellposedness(run: &WellposednessRun, cfg: &Config) -> Result<ExperimentReport> {
    let (d, k, s) = (run.d, run.k, run.s);
    let s_vis = thresholds(d, k)?.s_vis_f64();
    if !contraction_admissible(d, k) || !(s > s_vis && s <= 0.0) {
        return Err(Error::Regime(format!(
            "(d, k, s) = ({d}, {k}, {s}) outside the contraction range (needs admissible (d, k) and s_vis = {s_vis:.4} < s <= 0)"
        )));
    }
    let lattice = lattice_for(d)?;
    let base = background_data(lattice, cfg.seed, 1.0)?.scaled(run.scale);
    let direction = background_data(lattice, cfg.seed.wrapping_add(1), 1.0)?;
    let opts = ContractionOptions { tol: 1e-10, max_iter: 80, grid: GridSpec::graded(run.t_end / 64.0, 1.25, run.t_end / 8.0) };
    let mut report = ExperimentReport::new(
        "wellposedness",
        ExperimentParams {
            d,
            k,
            s,
            sigma: None,
            n: None,
            extra: vec![("scale".into(), run.scale), ("T".into(), run.t_end), ("s_vis".into(), s_vis)],
        },
    );
    let solve = |pair: &FieldPair| solve_contraction(pair, run.t_end, s, k, &opts);
    let reference = solve(&base)?;
    let mut quotients = Vec::new();
    for (i, eps) in [run.perturbation, 0.5 * run.perturbation].into_iter().enumerate() {
        let delta = direction.scaled(eps * run.scale);
        let perturbed = solve(&base.add(&delta)?)?;
        let q = difference_x(&perturbed, &reference, s, k)? / hs_pair_norm(&delta, s);
        quotients.push(q);
        report.checks.push(Check::at_most(format!("contraction ratio perturbed {}", i + 1), perturbed.max_ratio(), 0.5));
        report.checks.push(Check::at_most(format!("residual perturbed {}", i + 1), perturbed.residual, 1e-6));
    }
    let max_ratio = reference.max_ratio();
    report.checks.push(Check::at_most("contraction ratio", max_ratio, 0.5));
    report.checks.push(Check::at_most("residual", reference.residual, 1e-6));
    report.checks.push(Check::new("Lipschitz quotient", quotients[0], "finite", quotients[0].is_finite()));
    let stability = quotients[1] / quotients[0];
    report.checks.push(Check::within("Lipschitz quotient under halving", stability, 1.0, 0.5));
    for (&t, u) in reference.grid.times().iter().zip(&reference.values).step_by(reference.grid.nodes_per_panel() - 1) {
        report.samples.push(Sample {
            big_n: 0.0,
            r: run.scale,
            a: 0.0,
            t,
            level: None,
            norm_hs: Some(hs_norm(u, s)),
            norm_hsigma: None,
            norm_fl01: Some(fl_norm(u, 0.0, 1.0)?),
        });
    }
    report.notes.push(format!(
        "{} iterations, X(T) distances {:?}",
        reference.iterations(),
        reference.history.iter().map(|h| h.distance).collect::<Vec<_>>()
    ));

    let t_sweep: Vec<f64> = (0..if d == 3 { 3 } else { 5 }).map(|i| 0.5f64.powi(i)).collect();
    for &sigma in &run.schauder_sigma {
        let fit = schauder_constants(d, sigma, 2.0, 2.0, &t_sweep)?;
        if sigma == 0.0 {
            report.checks.push(Check::within("Schauder C (0,2,2)", fit.constant(), 1.0, 1e-12));
        } else {
            let c = fit.constant();
            report.checks.push(Check::new(format!("Schauder C ({sigma},2,2)"), c, "finite, > 0", c.is_finite() && c > 0.0));
        }
    }
    let fit = schauder_constants(d, 0.0, 1.0, 2.0, &t_sweep)?;
    let spread = fit.constants.iter().cloned().fold(f64::MIN, f64::max) / fit.constants.iter().cloned().fold(f64::MAX, f64::min);
    report.checks.push(Check::new("Schauder C (0,1,2) spread over t", spread, "<= 10", spread <= 10.0));
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l2_constant_is_one_and_l1_matches_theta_sum() {
        let f = schauder_constants(1, 0.0, 2.0, 2.0, &[1.0, 0.25]).unwrap();
        assert_eq!(f.constants, vec![1.0, 1.0]);
        // Σ_ξ e^{−|ξ|t} = coth(t/2) in one dimension
        let t: f64 = 0.5;
        let g = schauder_constants(1, 0.0, 1.0, 2.0, &[t]).unwrap();
        let exact = (t / (0.5 * t).tanh()).sqrt();
        assert!((g.constants[0] - exact).abs() < 1e-12);
    }

    #[test]
    fn refuses_inadmissible() {
        let run = WellposednessRun::new(2, 3, -0.1);
        assert!(matches!(run_wellposedness(&run, &Config::default()), Err(Error::Regime(_))));
        let run = WellposednessRun::new(1, 2, -0.6);
        assert!(matches!(run_wellposedness(&run, &Config::default()), Err(Error::Regime(_))));
    }
}
