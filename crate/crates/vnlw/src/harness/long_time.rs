use serde::{Deserialize, Serialize};

use super::config::Config;
use super::report::{Check, Dominance, ExperimentParams, ExperimentReport, Sample};
use crate::data_factory::{background_data, build_adversarial, BoxSpec, Variant};
use crate::picard::{xi_iterates, GridSpec};
use crate::regimes::{plan_long_time_calibrated, Calibration, RegimePlan};
use crate::spectral_core::{fl_norm, hs_norm, hs_pair_norm, FrequencyLattice};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LongTimeRun {
    pub d: usize,
    pub k: usize,
    pub s: f64,
    pub sigma: f64,
    /// Target: distance < 1/n and norm > n.
    pub n: u64,
    /// `None` picks the smallest N at which the plan is feasible.
    pub big_n: Option<u64>,
    /// Highest Picard level computed (at least 3).
    pub levels: usize,
    /// Geometric-mean norm of the smooth background.
    pub background: f64,
}

impl LongTimeRun {
    pub fn new(d: usize, k: usize, s: f64, sigma: f64, n: u64) -> Self {
        Self { d, k, s, sigma, n, big_n: None, levels: 3, background: 1.0 }
    }
}

/// Lattice cutoff k(2N + A) used for the iterates, with A = 1.
fn cutoff(k: usize, big_n: u64) -> usize {
    k * (2 * big_n as usize + 1)
}

fn calibration(cfg: &Config) -> Calibration {
    Calibration { distance_safety: cfg.distance_safety, ..Calibration::default() }
}

/// Smallest N with a feasible calibrated plan and a lattice under the cap.
///
/// Feasibility is monotone in N for these plans (R and the T window both
/// open up as N grows), so bisection applies.
pub fn minimal_long_time_n(d: usize, k: usize, s: f64, sigma: f64, n: u64, cfg: &Config) -> Result<RegimePlan> {
    let cap = cfg.lattice_cap(d);
    let largest = ((cap.saturating_sub(1)) / 2 / k).saturating_sub(1) / 2;
    if largest < 4 {
        return Err(Error::Config(format!("lattice cap {cap} leaves no room for k = {k}")));
    }
    let plan = |big_n: u64| plan_long_time_calibrated(d, k, s, sigma, n, big_n, &calibration(cfg));
    let top = plan(largest as u64)?;
    if !top.feasible {
        return Err(Error::Regime(format!(
            "no feasible long-time plan up to N = {largest} (lattice cap {cap}); binding: {}",
            top.binding.unwrap_or_else(|| "symbolic window".into())
        )));
    }
    let (mut lo, mut hi) = (4u64, largest as u64);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if plan(mid)?.feasible {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    plan(hi)
}

/// Norm inflation from u⃗₀ + φ at the planner's parameters.
///
/// The iterates Ξ₀…Ξ_J of the perturbed data are computed on one graded grid
/// whose panel edges include five scan times spread geometrically over the
/// plan's T window (the middle one is the plan's T). The scan time with the
/// largest ‖u_J‖_{H^σ} is t_n. The tail beyond J is bounded geometrically
/// with ρ = max_{2≤j≤J} (‖Ξ_j‖/‖Ξ₁‖)^{1/(j−1)}; the claimed lower bound on
/// ‖u(t_n)‖_{H^σ} is ‖u_J‖ − ‖Ξ₁‖ρ^J/(1 − ρ).
pub fn run_long_time_inflation(run: &LongTimeRun, cfg: &Config) -> Result<ExperimentReport> {
    let (d, k, s, sigma, n) = (run.d, run.k, run.s, run.sigma, run.n);
    if run.levels < 3 {
        return Err(Error::Config(format!("need at least three Picard levels, got {}", run.levels)));
    }
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let plan = match run.big_n {
        Some(big_n) => plan_long_time_calibrated(d, k, s, sigma, n, big_n, &calibration(cfg))?,
        None => minimal_long_time_n(d, k, s, sigma, n, cfg)?,
    };
    if !plan.symbolic_feasible {
        return Err(Error::Regime(format!(
            "(d, k, s) = ({d}, {k}, {s}) has an empty exponent window; binding: {}",
            plan.binding.clone().unwrap_or_default()
        )));
    }
    let big_n = plan.big_n as u64;
    let m = cutoff(k, big_n);
    if 2 * m + 1 > cfg.lattice_cap(d) {
        return Err(Error::Config(format!("lattice side {} exceeds cap {}", 2 * m + 1, cfg.lattice_cap(d))));
    }
    let mut report = ExperimentReport::new(
        "long_time_inflation",
        ExperimentParams { d, k, s, sigma: Some(sigma), n: Some(n), extra: vec![("background".into(), run.background)] },
    );
    if !plan.feasible {
        report.notes.push(format!("plan infeasible at N = {big_n}: {}", plan.binding.clone().unwrap_or_default()));
    }
    let lattice = FrequencyLattice::new(d, m)?;
    let spec = BoxSpec::new(d, k, big_n, 1.0, Variant::LongTime)?;
    let data = build_adversarial(spec, plan.r, lattice)?;
    let pair = background_data(lattice, cfg.seed, run.background)?.add(&data.pair)?;
    let distance = hs_pair_norm(&data.pair, s);

    let (t_lo, t_hi) = plan.t_window;
    let scan: Vec<f64> = (0..5).map(|i| t_lo * (t_hi / t_lo).powf(i as f64 / 4.0)).collect();
    let nf = big_n as f64;
    let grid = GridSpec::for_frequency(nf, t_hi).with_breakpoints(scan.iter().copied());
    let it = xi_iterates(&pair, k, t_hi, run.levels, &grid)?;

    let mut best: Option<(f64, f64, Vec<f64>, f64)> = None;
    for &t in &scan {
        let mut level_hs = Vec::with_capacity(run.levels + 1);
        for j in 0..=run.levels {
            let f = it.level_at(j, t)?;
            level_hs.push(hs_norm(&f, s));
            report.samples.push(Sample {
                big_n: nf,
                r: plan.r,
                a: 1.0,
                t,
                level: Some(j),
                norm_hs: Some(level_hs[j]),
                norm_hsigma: Some(hs_norm(&f, sigma)),
                norm_fl01: Some(fl_norm(&f, 0.0, 1.0)?),
            });
        }
        let u = it.partial_sum_at(run.levels, t)?;
        let u_sigma = hs_norm(&u, sigma);
        report.samples.push(Sample {
            big_n: nf,
            r: plan.r,
            a: 1.0,
            t,
            level: None,
            norm_hs: Some(hs_norm(&u, s)),
            norm_hsigma: Some(u_sigma),
            norm_fl01: Some(fl_norm(&u, 0.0, 1.0)?),
        });
        if best.as_ref().is_none_or(|b| u_sigma > b.1) {
            let sigma_levels = (0..=run.levels).map(|j| Ok(hs_norm(&it.level_at(j, t)?, sigma))).collect::<Result<Vec<_>>>()?;
            best = Some((t, u_sigma, sigma_levels, hs_norm(&u, s)));
        }
    }
    let (t_n, u_sigma, sigma_levels, _) = best.expect("five scan times");
    let xi1 = sigma_levels[1];
    let rho = (2..=run.levels)
        .map(|j| (sigma_levels[j] / xi1).powf(1.0 / (j as f64 - 1.0)))
        .fold(0.0, f64::max);
    let tail = if rho < 1.0 { xi1 * rho.powi(run.levels as i32) / (1.0 - rho) } else { f64::INFINITY };
    let certified = u_sigma - tail;
    let nf_target = n as f64;

    for (j, &v) in sigma_levels.iter().enumerate() {
        if j != 1 {
            report.dominance.push(Dominance::new("Xi1", &format!("Xi{j}"), t_n, xi1, v, 1.0));
        }
    }
    report.checks.push(Check::new("plan feasible", f64::from(u8::from(plan.feasible)), "= 1", plan.feasible));
    report.checks.push(Check::below("data distance", distance, 1.0 / nf_target));
    report.checks.push(Check::below("tail ratio", rho, 0.5));
    report.checks.push(Check::above("norm lower bound at t_n", certified, nf_target));
    report.checks.push(Check::below("t_n", t_n, 1.0 / nf_target));
    // largest m with distance < 1/m and norm > m
    let by_distance = (1.0 / distance).ceil() - 1.0;
    let by_norm = if certified > 1.0 { certified.ceil() - 1.0 } else { 0.0 };
    let largest = by_distance.min(by_norm).max(0.0);
    report.checks.push(Check::new("largest certified n", largest, "informational", true));
    if rho >= 1.0 {
        report.notes.push(format!("series not convergent at t_n: level norms {sigma_levels:?}"));
    }
    report.notes.push(format!("t_n = {t_n:.6e} chosen from scan {scan:?}"));
    report.plan = Some(plan);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refuses_above_threshold() {
        let run = LongTimeRun { big_n: Some(64), ..LongTimeRun::new(1, 2, -0.25, -0.25, 2) };
        assert!(matches!(run_long_time_inflation(&run, &Config::default()), Err(Error::Regime(_))));
    }

    #[test]
    fn minimal_n_is_feasible_and_tight() {
        let cfg = Config::default();
        let p = minimal_long_time_n(1, 2, -0.75, -0.75, 2, &cfg).unwrap();
        assert!(p.feasible);
        let below = plan_long_time_calibrated(1, 2, -0.75, -0.75, 2, p.big_n as u64 - 1, &calibration(&cfg)).unwrap();
        assert!(!below.feasible);
    }
}
