//! Scaling laws and threshold checks that need no time stepping.

use serde::{Deserialize, Serialize};

use super::fit::log_log_fit;
use super::report::{Check, ExperimentParams, ExperimentReport, Sample};
use crate::data_factory::{build_adversarial, build_sigma, BoxSpec, Variant};
use crate::estimates::{big_i_sum, thresholds, xi1_closed_form_field, Bracket};
use crate::regimes::{plan_ck_failure, plan_long_time, DEFAULT_MARGIN};
use crate::spectral_core::{hs_norm, Freq, FrequencyLattice};
use crate::Result;

/// ‖Ξ₁(φ)(t)‖_{H^s} for unit boxes (A = 1) and R = 1 in the regime 1/N ≪ t ≲ 1.
///
/// Fits the t-exponent at the largest N over t = 2^{−i}, and the N-exponent
/// at t = 1/2. Expected: 1 and −1.
pub fn run_long_time_law(d: usize, k: usize, s: f64, big_n: &[u64]) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new(
        "long_time_law",
        ExperimentParams { d, k, s, sigma: None, n: None, extra: vec![("A".into(), 1.0), ("R".into(), 1.0)] },
    );
    let norm_at = |n: u64, t: f64| -> Result<f64> {
        let spec = BoxSpec::new(d, k, n, 1.0, Variant::LongTime)?;
        let data = build_adversarial(spec, 1.0, FrequencyLattice::new(d, spec.required_cutoff())?)?;
        let f = xi1_closed_form_field(&data, t, FrequencyLattice::new(d, k * spec.required_cutoff())?)?;
        Ok(hs_norm(&f, s))
    };
    let push = |report: &mut ExperimentReport, n: u64, t: f64, v: f64| {
        report.samples.push(Sample {
            big_n: n as f64,
            r: 1.0,
            a: 1.0,
            t,
            level: Some(1),
            norm_hs: Some(v),
            norm_hsigma: None,
            norm_fl01: None,
        })
    };
    let n_max = *big_n.iter().max().expect("non-empty sweep");
    let times: Vec<f64> = (0..5).map(|i| 0.5f64.powi(i)).collect();
    let mut values = Vec::new();
    for &t in &times {
        let v = norm_at(n_max, t)?;
        push(&mut report, n_max, t, v);
        values.push(v);
    }
    report.fits.push(log_log_fit(&format!("t-exponent N={n_max}"), &times, &values)?.expect(1.0, 0.1));
    let t_fixed = 0.5;
    let mut ns = Vec::new();
    let mut values = Vec::new();
    for &n in big_n {
        let v = norm_at(n, t_fixed)?;
        if n != n_max {
            push(&mut report, n, t_fixed, v);
        }
        ns.push(n as f64);
        values.push(v);
    }
    report.fits.push(log_log_fit("N-exponent t=1/2", &ns, &values)?.expect(-1.0, 0.15));
    report.checks.push(Check::above("N t_min", n_max as f64 * times[times.len() - 1], 10.0 - 1e-9));
    Ok(report.finish())
}

/// Tuples used for the ε-sum bracket: every zero-sum k-tuple of centres,
/// plus each with one component moved by ±w.
pub fn bracket_tuples(k: usize, n: u64, w: i64) -> Vec<Vec<Freq>> {
    let sigma = build_sigma(k, n, Variant::LongTime, 1);
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let tuple: Vec<Freq> = idx.iter().map(|&i| sigma[i]).collect();
        if tuple.iter().map(|x| x[0]).sum::<i64>() == 0 {
            out.push(tuple.clone());
            for j in 0..k {
                for shift in [-w, w] {
                    let mut t = tuple.clone();
                    t[j][0] += shift;
                    out.push(t);
                }
            }
        }
        let mut j = 0;
        while j < k {
            idx[j] += 1;
            if idx[j] < sigma.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == k {
            break;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketRow {
    pub k: usize,
    pub min: f64,
    pub max: f64,
    pub spread: f64,
    pub asserted: bool,
    pub pass: bool,
}

/// N·Σ_ε I(ξ̄, ε̄) over [`bracket_tuples`] for each N; the spread max/min must
/// stay within `bracket` for k ≤ 5. Larger k are reported only.
pub fn eps_sum_bracket(ks: &[usize], big_n: &[u64], bracket: &Bracket) -> Result<Vec<BracketRow>> {
    ks.iter()
        .map(|&k| {
            let mut values = Vec::new();
            for &n in big_n {
                let w = (n as i64 / 32).max(1);
                for tuple in bracket_tuples(k, n, w) {
                    values.push(n as f64 * big_i_sum(&tuple)?);
                }
            }
            let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let asserted = k <= 5;
            Ok(BracketRow {
                k,
                min,
                max,
                spread: max / min,
                asserted,
                pass: !asserted || bracket.spread_ok(&values),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlipRow {
    pub d: usize,
    pub k: usize,
    pub s: f64,
    pub long_time_feasible: bool,
    pub long_time_expected: bool,
    pub ck_feasible: bool,
    pub ck_expected: bool,
}

/// Long-time feasibility against s < −1/k and C^k-failure feasibility
/// against s < s_vis, on s = −3/2, −3/2 + step, …, 0.
pub fn threshold_flips(pairs: &[(usize, usize)], step: f64) -> Result<Vec<FlipRow>> {
    let count = (1.5 / step).round() as i64;
    let mut rows = Vec::new();
    for &(d, k) in pairs {
        let s_vis = thresholds(d, k)?.s_vis_f64();
        for i in 0..=count {
            let s = -1.5 + i as f64 * 1.5 / count as f64;
            let long = plan_long_time(d, k, s, s, 1, 1e6, DEFAULT_MARGIN).map(|p| p.symbolic_feasible).unwrap_or(false);
            let ck = plan_ck_failure(d, k, s, 1024).map(|p| p.symbolic_feasible).unwrap_or(false);
            rows.push(FlipRow {
                d,
                k,
                s,
                long_time_feasible: long,
                long_time_expected: s < -1.0 / k as f64 - 1e-12,
                ck_feasible: ck,
                ck_expected: s < s_vis - 1e-12,
            });
        }
    }
    Ok(rows)
}

/// True iff every row agrees with its threshold and each threshold actually
/// flips inside the grid.
pub fn flips_ok(rows: &[FlipRow]) -> bool {
    let agree = rows.iter().all(|r| r.long_time_feasible == r.long_time_expected && r.ck_feasible == r.ck_expected);
    let mut groups: Vec<(usize, usize)> = rows.iter().map(|r| (r.d, r.k)).collect();
    groups.dedup();
    let flips = groups.iter().all(|&(d, k)| {
        let g: Vec<&FlipRow> = rows.iter().filter(|r| (r.d, r.k) == (d, k)).collect();
        let both = |f: fn(&FlipRow) -> bool| g.iter().any(|r| f(r)) && g.iter().any(|r| !f(r));
        both(|r| r.long_time_feasible) && both(|r| r.ck_feasible)
    });
    agree && flips
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_bracket_tuples() {
        let t = bracket_tuples(2, 64, 2);
        // (N, −N) and (−N, N), each with four shifted copies
        assert_eq!(t.len(), 10);
    }

    #[test]
    fn flips_for_quadratic_line() {
        let rows = threshold_flips(&[(1, 2)], 0.05).unwrap();
        assert_eq!(rows.len(), 31);
        assert!(flips_ok(&rows), "{rows:#?}");
    }
}
