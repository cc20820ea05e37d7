//! Parameters for inflation at times T ≪ N⁻¹ with boxes of width A ≫ 1.

use num_rational::Ratio;

use super::plan::{minimum_n, rational, threshold_note, to_f64, LedgerEntry, RegimePlan, Relation, Window};
use crate::estimates::{g_s, thresholds};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShortTimeCase {
    /// s < −d/2, k ≥ 5: R = N^δ
    Supercritical,
    /// s = −d/2, k ≥ 5: R = (log N)^δ
    Endpoint,
    /// −d/2 < s < min(s_scal, 0): A = N^θ
    Subcritical,
}

impl ShortTimeCase {
    pub fn number(self) -> u8 {
        match self {
            Self::Supercritical => 1,
            Self::Endpoint => 2,
            Self::Subcritical => 3,
        }
    }
}

/// Which construction applies to (d, k, s), if any.
pub fn short_time_case(d: usize, k: usize, s: f64) -> Result<ShortTimeCase> {
    let th = thresholds(d, k)?;
    let s = rational(s);
    let half_d = Ratio::new(d as i64, 2);
    if s < -half_d && k >= 5 {
        Ok(ShortTimeCase::Supercritical)
    } else if s == -half_d && k >= 5 {
        Ok(ShortTimeCase::Endpoint)
    } else if s > -half_d && s < th.s_scal.min(Ratio::from_integer(0)) && Ratio::from_integer(k as i64) > Ratio::new(d as i64 + 2, d as i64) {
        Ok(ShortTimeCase::Subcritical)
    } else {
        Err(Error::Regime(format!(
            "(d, k, s) = ({d}, {k}, {s}) is not covered by the short-time construction \
             (needs -d/2 < s < min(s_scal, 0) with k > 1 + 2/d, or s <= -d/2 with k >= 5); try the long-time planner"
        )))
    }
}

struct Instance {
    r: f64,
    a: f64,
    t_lo: f64,
    t_hi: f64,
    windows: Vec<Window>,
    symbolic: bool,
}

fn instance(case: ShortTimeCase, d: usize, k: usize, s: f64, big_n: f64) -> Instance {
    let (df, kf) = (d as f64, k as f64);
    let (di, ki) = (d as i64, k as i64);
    let ln = big_n.ln();
    let sr = rational(s);
    match case {
        ShortTimeCase::Supercritical => {
            let upper = Ratio::from_integer(2).min(Ratio::new(-4, 3) * (Ratio::new(1, 2) + sr));
            let w = Window::exact("delta", Ratio::from_integer(0), upper);
            let delta = (Ratio::from_integer(0) + upper) / 2;
            let lo_e = Ratio::new(-(ki - 1), 2) - Ratio::new(ki + 1, 4) * delta;
            let hi_e = Ratio::from_integer(-1).min(Ratio::new(-(ki - 1), 2) - Ratio::new(ki - 1, 4) * delta);
            let tau = Window::exact("tau", lo_e, hi_e);
            let dl = to_f64(delta);
            Instance {
                r: big_n.powf(dl),
                a: big_n.powf((1.0 - dl / 2.0) / df),
                t_lo: big_n.powf(tau.lower),
                t_hi: big_n.powf(tau.upper),
                symbolic: !w.is_empty() && !tau.is_empty(),
                windows: vec![w, tau],
            }
        }
        ShortTimeCase::Endpoint => {
            let upper = Ratio::new(1, 16 * (ki - 1));
            let w = Window::exact("delta", Ratio::from_integer(0), upper);
            let dl = w.chosen;
            let t_lo = big_n.powf(-(kf - 1.0) / 2.0) * ln.powf(-kf * dl / 2.0 - 3.0 / 16.0);
            let t_hi = big_n.powf(-1.0).min(big_n.powf(-(kf - 1.0) / 2.0) * ln.powf(-(kf - 1.0) * dl / 2.0 + 1.0 / 16.0));
            let tau = Window::numeric("log_T", t_lo.ln(), t_hi.ln(), 0.5 * (t_lo.ln() + t_hi.ln()));
            Instance {
                r: ln.powf(dl),
                a: big_n.powf(1.0 / df) * ln.powf(-1.0 / (8.0 * (kf - 1.0) * df)),
                t_lo,
                t_hi,
                // (k−1)/2 > 1 for k ≥ 5, so the N powers separate
                symbolic: !w.is_empty(),
                windows: vec![w, tau],
            }
        }
        ShortTimeCase::Subcritical => {
            let lower = ((sr * ki + 2) / (sr + Ratio::new(di * (ki - 1), 2))).max(Ratio::from_integer(0));
            let upper = Ratio::from_integer(ki).min(Ratio::from_integer(1));
            let w = Window::exact("theta", lower, upper);
            let theta = w.chosen;
            let a = big_n.powf(theta);
            let lo_e = kf * s / 2.0 - (s + df * (kf - 1.0) / 2.0) * theta / 2.0;
            let hi_e = (-1.0f64).min(s * (kf - 1.0) / 2.0 - df * (kf - 1.0) * theta / 4.0);
            let tau = Window::numeric("tau", lo_e, hi_e, 0.5 * (lo_e + hi_e));
            Instance {
                r: big_n.powf(-s) * a.powf(-df / 2.0) / ln,
                a,
                t_lo: big_n.powf(lo_e) * ln.powf(kf / 2.0),
                t_hi: big_n.powf(hi_e),
                symbolic: !w.is_empty() && !tau.is_empty(),
                windows: vec![w, tau],
            }
        }
    }
}

fn ledger(d: usize, k: usize, s: f64, n: u64, big_n: f64, inst: &Instance, t: f64) -> Result<Vec<LedgerEntry>> {
    let (df, kf) = (d as f64, k as f64);
    let (r, a) = (inst.r, inst.a);
    let gs = g_s(s, d, a.max(1.0))?;
    let nf = n as f64;
    Ok(vec![
        LedgerEntry::new("time: T << 1/N", Relation::Much, t, 1.0 / big_n),
        LedgerEntry::new("time: T << (R A^d)^(-(k-1)/2)", Relation::Much, t, (r * a.powf(df)).powf(-(kf - 1.0) / 2.0)),
        LedgerEntry::new("width: 1 <= A", Relation::LessEq, 1.0, a),
        LedgerEntry::new("width: A << N", Relation::Much, a, big_n),
        LedgerEntry::new("amplitude: 1 << R g_s(A)", Relation::Much, 1.0, r * gs),
        LedgerEntry::new("amplitude: 1 << R A^d", Relation::Much, 1.0, r * a.powf(df)),
        LedgerEntry::new("distance: R N^s A^(d/2) < 1/n", Relation::Less, r * big_n.powf(s) * a.powf(df / 2.0), 1.0 / nf),
        LedgerEntry::new("growth: T^2 R^k A^(d(k-1)) g_s(A) >> n", Relation::Much, nf, t * t * r.powf(kf) * a.powf(df * (kf - 1.0)) * gs),
        LedgerEntry::new("T window nonempty", Relation::Less, inst.t_lo, inst.t_hi),
    ])
}

fn build(d: usize, k: usize, s: f64, n: u64, big_n: f64, margin: f64) -> Result<RegimePlan> {
    let case = short_time_case(d, k, s)?;
    if !(big_n > 1.0) {
        return Err(Error::Domain(format!("N = {big_n} must exceed 1")));
    }
    let inst = instance(case, d, k, s, big_n);
    let t = (inst.t_lo * inst.t_hi).sqrt();
    let ledger = ledger(d, k, s, n, big_n, &inst, t)?;
    let th = thresholds(d, k)?;
    Ok(RegimePlan {
        regime: format!("short_time_case{}", case.number()),
        d,
        k,
        s,
        sigma: None,
        n: Some(n),
        big_n,
        windows: inst.windows,
        r: inst.r,
        a: inst.a,
        t,
        t_window: (inst.t_lo, inst.t_hi),
        growth_exponent: None,
        margin,
        min_n: None,
        symbolic_feasible: inst.symbolic,
        feasible: false,
        binding: None,
        ledger,
        notes: vec![threshold_note(&th)],
    }
    .finish())
}

/// Short-time plan at N: midpoint exponents, T the geometric mean of its window.
pub fn plan_short_time(d: usize, k: usize, s: f64, n: u64, big_n: f64, margin: f64) -> Result<RegimePlan> {
    let mut plan = build(d, k, s, n, big_n, margin)?;
    if plan.symbolic_feasible {
        plan.min_n = minimum_n(|x| build(d, k, s, n, x, margin).ok().map(|p| p.feasible));
    } else {
        plan.binding.get_or_insert_with(|| "empty exponent window".into());
    }
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_selection() {
        assert_eq!(short_time_case(1, 5, -1.0).unwrap(), ShortTimeCase::Supercritical);
        assert_eq!(short_time_case(2, 5, -1.0).unwrap(), ShortTimeCase::Endpoint);
        assert_eq!(short_time_case(3, 3, -0.25).unwrap(), ShortTimeCase::Subcritical);
        assert!(matches!(short_time_case(1, 2, -0.75), Err(Error::Regime(_))));
    }

    #[test]
    fn supercritical_window() {
        let p = plan_short_time(1, 5, -1.0, 1, 1e6, 1.0).unwrap();
        let w = p.window("delta").unwrap();
        assert_eq!((w.lower_exact.as_str(), w.upper_exact.as_str()), ("0", "2/3"));
        assert!(p.symbolic_feasible);
        assert_eq!(p.regime, "short_time_case1");
    }

    #[test]
    fn subcritical_theta() {
        let p = plan_short_time(3, 3, -0.25, 1, 1e6, 1.0).unwrap();
        let w = p.window("theta").unwrap();
        assert!((w.lower - 1.25 / 2.75).abs() < 1e-12);
        assert_eq!(w.upper, 1.0);
        assert!((w.chosen - 0.727).abs() < 1e-3);
        assert!(p.symbolic_feasible);
    }

    #[test]
    fn ledger_names_every_condition() {
        let p = plan_short_time(1, 5, -1.0, 2, 1e4, 10.0).unwrap();
        for tag in ["time:", "width:", "amplitude:", "distance:", "growth:"] {
            assert!(p.ledger.iter().any(|e| e.name.starts_with(tag)), "{tag}");
        }
    }
}
