use super::config::Config;
use super::fit::log_log_fit;
use super::report::{Check, ExperimentParams, ExperimentReport, Sample};
use crate::data_factory::{build_adversarial, BoxSpec, Variant};
use crate::estimates::{thresholds, xi1_closed_form_field};
use crate::picard::{xi1_boxwise, BoxwiseOptions};
use crate::regimes::{ck_growth_exponent, indicator_norm, plan_ck_failure};
use crate::spectral_core::{fl_norm, hs_norm, FrequencyLattice};
use crate::{Error, Result};

/// Unbounded first iterate from unit-norm data.
///
/// For each N the planner fixes A = N/log N, t = 1/log N and R with
/// ‖(φ, 0)‖_{ℋ^s} = 1. ‖Ξ₁(t)‖_{H^s} comes from the closed form in d = 1 and
/// from the box-by-box quadrature otherwise. The verdict asks for a fitted
/// N-exponent within `tolerance` of −ks − 1 + (k/2 − 1)d, a positive exponent,
/// and data norms within a factor 2 of each other.
pub fn run_ck_failure(d: usize, k: usize, s: f64, big_n: &[u64], tolerance: f64, cfg: &Config) -> Result<ExperimentReport> {
    if big_n.len() < 2 {
        return Err(Error::Config("C^k sweep needs at least two values of N".into()));
    }
    let s_vis = thresholds(d, k)?.s_vis_f64();
    let expected = ck_growth_exponent(d, k, s);
    let mut report = ExperimentReport::new(
        "ck_failure",
        ExperimentParams { d, k, s, sigma: None, n: None, extra: vec![("s_vis".into(), s_vis)] },
    );
    let mut xs = Vec::new();
    let mut norms = Vec::new();
    let mut data_norms = Vec::new();
    for &n in big_n {
        let plan = plan_ck_failure(d, k, s, n)?;
        let spec = BoxSpec::new(d, k, n, plan.a, Variant::LongTime)?;
        // the box-by-box route never forms the global lattice
        if d == 1 && 2 * k * spec.required_cutoff() + 1 > cfg.lattice_cap(1) {
            return Err(Error::Config(format!("N = {n} needs a lattice beyond the cap {}", cfg.lattice_cap(1))));
        }
        let data_norm = indicator_norm(&spec, s) * plan.r;
        let (hs, fl) = if d == 1 {
            let lattice = FrequencyLattice::new(1, k * spec.required_cutoff())?;
            let data = build_adversarial(spec, plan.r, FrequencyLattice::new(1, spec.required_cutoff())?)?;
            let f = xi1_closed_form_field(&data, plan.t, lattice)?;
            (hs_norm(&f, s), fl_norm(&f, 0.0, 1.0)?)
        } else {
            let opts = BoxwiseOptions { tol: cfg.quadrature_tol.max(1e-8), ..BoxwiseOptions::default() };
            let f = xi1_boxwise(&spec, plan.r, plan.t, &opts)?;
            let fl = f.blocks.iter().map(|(_, b)| fl_norm(b, 0.0, 1.0)).sum::<Result<f64>>()?;
            (f.hs_norm(s), fl)
        };
        report.samples.push(Sample {
            big_n: n as f64,
            r: plan.r,
            a: plan.a,
            t: plan.t,
            level: None,
            norm_hs: Some(data_norm),
            norm_hsigma: None,
            norm_fl01: None,
        });
        report.samples.push(Sample {
            big_n: n as f64,
            r: plan.r,
            a: plan.a,
            t: plan.t,
            level: Some(1),
            norm_hs: Some(hs),
            norm_hsigma: None,
            norm_fl01: Some(fl),
        });
        xs.push(n as f64);
        norms.push(hs);
        data_norms.push(data_norm);
    }
    let fit = log_log_fit("N-exponent", &xs, &norms)?.expect(expected, tolerance);
    let slope = fit.slope;
    report.fits.push(fit);
    let spread = data_norms.iter().cloned().fold(f64::MIN, f64::max) / data_norms.iter().cloned().fold(f64::MAX, f64::min);
    report.checks.push(Check::new("data norm spread", spread, "<= 2", spread <= 2.0));
    report.checks.push(Check::above("fitted growth exponent", slope, 0.0));
    report.notes.push(if s < s_vis && slope > 0.0 {
        format!("failure detected: expected exponent {expected:.4}, fitted {slope:.4}")
    } else {
        format!("no failure detected: s = {s}, s_vis = {s_vis:.4}, fitted exponent {slope:.4}")
    });
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_failure_and_its_absence() {
        let cfg = Config::default();
        let rep = run_ck_failure(1, 2, -0.75, &[64, 128, 256, 512], 0.15, &cfg).unwrap();
        assert!(rep.verdict, "{rep:#?}");
        // s_vis = -1/2 for (d, k) = (1, 2)
        let above = run_ck_failure(1, 2, -0.4, &[64, 128, 256, 512], 0.15, &cfg).unwrap();
        assert!(!above.verdict);
        assert!(above.notes[0].starts_with("no failure"));
    }
}
