use serde::{Deserialize, Serialize};

use super::config::Config;
use super::fit::log_log_fit;
use super::report::{Check, Dominance, ExperimentParams, ExperimentReport, Sample};
use crate::data_factory::{build_adversarial, AdversarialData, BoxSpec, Variant};
use crate::estimates::{lower_bound_predictions, xi1_closed_form_field, Bracket, LowerBoundParams, Regime};
use crate::picard::{xi_iterates, GridSpec};
use crate::regimes::indicator_norm;
use crate::spectral_core::{fl_norm, hs_norm, FrequencyLattice};
use crate::{Error, Result};

/// How the amplitude R is chosen at each N.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum RRule {
    Fixed(f64),
    /// R with ‖(φ, 0)‖_{ℋ^s} = 1.
    UnitDistance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShortTimeRun {
    pub d: usize,
    pub k: usize,
    pub s: f64,
    pub big_n: Vec<u64>,
    pub a: f64,
    pub r: RRule,
    /// Sample times as multiples of 1/N.
    pub t_scaled: Vec<f64>,
    /// Multiples of R for the homogeneity fit.
    pub r_factors: Vec<f64>,
    /// Also compute Ξ₂ by quadrature at the last time for the dominance check.
    pub dominance: bool,
}

impl ShortTimeRun {
    /// A = 16, unit-distance R and seven dyadic times from 10⁻³/N.
    pub fn standard(d: usize, k: usize, s: f64, big_n: Vec<u64>) -> Self {
        Self {
            d,
            k,
            s,
            big_n,
            a: 16.0,
            r: RRule::UnitDistance,
            t_scaled: (0..7).map(|i| 1e-3 * f64::from(1u32 << i)).collect(),
            r_factors: vec![1.0, 2.0, 4.0, 8.0],
            dominance: true,
        }
    }
}

fn xi1_norm(data: &AdversarialData, t: f64, s: f64) -> Result<(f64, f64)> {
    let lattice = FrequencyLattice::new(data.spec.d, data.spec.k * data.spec.required_cutoff())?;
    let f = xi1_closed_form_field(data, t, lattice)?;
    Ok((hs_norm(&f, s), fl_norm(&f, 0.0, 1.0)?))
}

/// Growth of ‖Ξ₁(φ)(t)‖_{H^s} for 0 < t ≪ 1/N, measured with the closed form.
///
/// Fits the t-exponent (expect 2) per N, the R-exponent (expect k) at the
/// middle time, compares every sample with the unit-constant prediction and,
/// if requested, checks ‖Ξ₂‖ ≤ ‖Ξ₁‖/margin at the last time by quadrature.
pub fn run_short_time_inflation(run: &ShortTimeRun, cfg: &Config) -> Result<ExperimentReport> {
    let (d, k, s) = (run.d, run.k, run.s);
    if run.t_scaled.len() < 2 || run.big_n.is_empty() {
        return Err(Error::Config("short-time run needs at least one N and two times".into()));
    }
    if let Some(bad) = run.t_scaled.iter().find(|&&x| !(x > 0.0 && x * cfg.margin <= 1.0 + 1e-12)) {
        return Err(Error::Regime(format!(
            "sample time {bad}/N is not below 1/(N·margin) with margin {}; the short-time law only holds for t << 1/N",
            cfg.margin
        )));
    }
    let mut report = ExperimentReport::new(
        "short_time_inflation",
        ExperimentParams { d, k, s, sigma: None, n: None, extra: vec![("A".into(), run.a)] },
    );
    let mut ratios = Vec::new();
    for &big_n in &run.big_n {
        let spec = BoxSpec::new(d, k, big_n, run.a, Variant::ShortTime)?;
        if !spec.well_separated() {
            report.notes.push(format!("N = {big_n}: A > N/8, boxes not well separated"));
        }
        let r = match run.r {
            RRule::Fixed(r) => r,
            RRule::UnitDistance => 1.0 / indicator_norm(&spec, s),
        };
        let lattice = FrequencyLattice::new(d, spec.required_cutoff())?;
        let data = build_adversarial(spec, r, lattice)?;
        let nf = big_n as f64;
        let times: Vec<f64> = run.t_scaled.iter().map(|x| x / nf).collect();
        let mut norms = Vec::with_capacity(times.len());
        for &t in &times {
            let (hs, fl) = xi1_norm(&data, t, s)?;
            norms.push(hs);
            report.samples.push(Sample {
                big_n: nf,
                r,
                a: run.a,
                t,
                level: Some(1),
                norm_hs: Some(hs),
                norm_hsigma: None,
                norm_fl01: Some(fl),
            });
            let predicted = lower_bound_predictions(&LowerBoundParams { d, k, s, r, a: run.a, n: nf, t, regime: Regime::Short })?;
            ratios.push(hs / predicted);
        }
        report.fits.push(log_log_fit(&format!("t-exponent N={big_n}"), &times, &norms)?.expect(2.0, 0.1));

        let t_mid = times[times.len() / 2];
        if run.r_factors.len() >= 2 {
            let rs: Vec<f64> = run.r_factors.iter().map(|f| f * r).collect();
            let values = rs
                .iter()
                .map(|&ri| {
                    let scaled = build_adversarial(spec, ri, lattice)?;
                    Ok(xi1_norm(&scaled, t_mid, s)?.0)
                })
                .collect::<Result<Vec<_>>>()?;
            report.fits.push(log_log_fit(&format!("R-exponent N={big_n}"), &rs, &values)?.expect(k as f64, 1e-12));
        }

        if run.dominance {
            let t_end = *times.last().unwrap();
            let wide = FrequencyLattice::new(d, (2 * k - 1) * spec.required_cutoff())?;
            let pair = data.pair.resample(wide)?;
            let it = xi_iterates(&pair, k, t_end, 2, &GridSpec::for_frequency(nf, t_end))?;
            let x1 = it.level_at(1, t_end)?;
            let x2 = it.level_at(2, t_end)?;
            let exact = xi1_closed_form_field(&data, t_end, wide)?;
            report.checks.push(Check::below(
                format!("quadrature Xi1 vs closed form N={big_n}"),
                x1.relative_error(&exact)?,
                1e-6,
            ));
            report.dominance.push(Dominance::new("Xi1", "Xi2", t_end, hs_norm(&x1, s), hs_norm(&x2, s), cfg.margin));
            report.samples.push(Sample {
                big_n: nf,
                r,
                a: run.a,
                t: t_end,
                level: Some(2),
                norm_hs: Some(hs_norm(&x2, s)),
                norm_hsigma: None,
                norm_fl01: Some(fl_norm(&x2, 0.0, 1.0)?),
            });
        }
    }
    let spread = ratios.iter().cloned().fold(f64::MIN, f64::max) / ratios.iter().cloned().fold(f64::MAX, f64::min);
    let bracket = Bracket::default();
    report.checks.push(Check::new(
        "measured/predicted spread",
        spread,
        format!("<= {}", bracket.upper / bracket.lower),
        bracket.spread_ok(&ratios),
    ));
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_in_time() {
        let mut run = ShortTimeRun::standard(1, 2, -0.75, vec![64]);
        run.t_scaled.truncate(5);
        let rep = run_short_time_inflation(&run, &Config::default()).unwrap();
        assert!(rep.verdict, "{rep:#?}");
        let f = rep.fit("t-exponent N=64").unwrap();
        assert!((f.slope - 2.0).abs() < 0.05);
    }

    #[test]
    fn refuses_long_times() {
        let mut run = ShortTimeRun::standard(1, 2, -0.75, vec![64]);
        run.t_scaled = vec![0.05, 0.5];
        assert!(matches!(run_short_time_inflation(&run, &Config::default()), Err(Error::Regime(_))));
    }
}
