//! Parameters for inflation at times N⁻¹ ≪ T ≪ 1 with unit boxes (A = 1).
//!
//! With R = N^ρ and T = N^τ every condition is linear in (ρ, τ), so the
//! admissible set is found exactly before anything is evaluated at N.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::plan::{minimum_n, rational, threshold_note, LedgerEntry, RegimePlan, Relation, Window};
use crate::data_factory::{BoxSpec, Variant};
use crate::estimates::{long_time_zero_mode_coefficient, thresholds};
use crate::spectral_core::bracket;
use crate::{Error, Result};

type Q = Ratio<i64>;

/// τ > slope·ρ + offset (lower) or τ < slope·ρ + offset (upper).
struct Line {
    name: &'static str,
    slope: Q,
    offset: Q,
}

fn lines(k: i64) -> (Vec<Line>, Vec<Line>) {
    let q = |a: i64, b: i64| Q::new(a, b);
    let lower = vec![
        Line { name: "growth: T >> R^-k N n", slope: q(-k, 1), offset: q(1, 1) },
        Line { name: "time: 1/N << T", slope: q(0, 1), offset: q(-1, 1) },
    ];
    let upper = vec![
        Line { name: "remainder: T << R^-(k-1) N", slope: q(-(k - 1), 1), offset: q(1, 1) },
        Line { name: "remainder: T << R^(k/3) N^(-1/3)", slope: q(k, 3), offset: q(-1, 3) },
        Line { name: "remainder: T << R^(-k(k-1)/(k+1)) N^((k-1)/(k+1))", slope: q(-k * (k - 1), k + 1), offset: q(k - 1, k + 1) },
        Line { name: "remainder: T << R^k N^-1", slope: q(k, 1), offset: q(-1, 1) },
        Line { name: "time: T << 1", slope: q(0, 1), offset: q(0, 1) },
    ];
    (lower, upper)
}

/// Exact admissible ρ interval and the constraints that bound it.
pub struct RhoWindow {
    pub lower: Q,
    pub upper: Q,
    pub lower_by: String,
    pub upper_by: String,
}

pub fn rho_window(k: usize, s: f64) -> RhoWindow {
    let (lower, upper) = lines(k as i64);
    let mut lo = (Q::from_integer(i64::MIN / 4), String::from("none"));
    let mut hi = (-rational(s), String::from("distance: R N^s << 1/n"));
    for l in &lower {
        for u in &upper {
            // l.slope ρ + l.offset < u.slope ρ + u.offset
            let a = l.slope - u.slope;
            let b = u.offset - l.offset;
            let pair = format!("{} vs {}", l.name, u.name);
            if a > Q::from_integer(0) {
                let bound = b / a;
                if bound < hi.0 {
                    hi = (bound, pair);
                }
            } else if a < Q::from_integer(0) {
                let bound = b / a;
                if bound > lo.0 {
                    lo = (bound, pair);
                }
            } else if b <= Q::from_integer(0) {
                hi = (Q::from_integer(i64::MIN / 4), pair);
            }
        }
    }
    RhoWindow { lower: lo.0, upper: hi.0, lower_by: lo.1, upper_by: hi.1 }
}

fn tau_window(k: usize, rho: Q) -> (Q, Q) {
    let (lower, upper) = lines(k as i64);
    let lo = lower.iter().map(|l| l.slope * rho + l.offset).max().unwrap();
    let hi = upper.iter().map(|l| l.slope * rho + l.offset).min().unwrap();
    (lo, hi)
}

fn check_inputs(k: usize, s: f64, sigma: f64) -> Result<()> {
    if !(2..=5).contains(&k) {
        return Err(Error::Regime(format!("long-time construction needs 2 <= k <= 5, got {k}")));
    }
    if sigma > s {
        return Err(Error::Regime(format!("measurement index sigma = {sigma} must not exceed s = {s}")));
    }
    Ok(())
}

fn ledger(k: usize, s: f64, n: u64, big_n: f64, r: f64, t: f64, t_lo: f64, t_hi: f64) -> Vec<LedgerEntry> {
    let kf = k as f64;
    let nf = n as f64;
    vec![
        LedgerEntry::new("distance: R N^s << 1/n", Relation::Much, r * big_n.powf(s), 1.0 / nf),
        LedgerEntry::new("growth: T >> R^-k N n", Relation::Much, r.powf(-kf) * big_n * nf, t),
        LedgerEntry::new("remainder: T << R^-(k-1) N", Relation::Much, t, r.powf(-(kf - 1.0)) * big_n),
        LedgerEntry::new("remainder: T << R^(k/3) N^(-1/3)", Relation::Much, t, r.powf(kf / 3.0) * big_n.powf(-1.0 / 3.0)),
        LedgerEntry::new(
            "remainder: T << R^(-k(k-1)/(k+1)) N^((k-1)/(k+1))",
            Relation::Much,
            t,
            r.powf(-kf * (kf - 1.0) / (kf + 1.0)) * big_n.powf((kf - 1.0) / (kf + 1.0)),
        ),
        LedgerEntry::new("remainder: T << R^k N^-1", Relation::Much, t, r.powf(kf) / big_n),
        LedgerEntry::new("time: 1/N << T", Relation::Much, 1.0 / big_n, t),
        LedgerEntry::new("time: T << 1", Relation::Much, t, 1.0),
        LedgerEntry::new("R window: N^(1/k) << R", Relation::Much, big_n.powf(1.0 / kf), r),
        LedgerEntry::new("R window: R << N^(2/(k-1))", Relation::Much, r, big_n.powf(2.0 / (kf - 1.0))),
        LedgerEntry::new("T window nonempty", Relation::Less, t_lo, t_hi),
    ]
}

fn build(d: usize, k: usize, s: f64, sigma: f64, n: u64, big_n: f64, margin: f64) -> Result<RegimePlan> {
    check_inputs(k, s, sigma)?;
    let th = thresholds(d, k)?;
    let rw = rho_window(k, s);
    let symbolic = rw.lower < rw.upper && s < 0.0;
    let rho_w = Window::exact("rho", rw.lower, rw.upper);
    let rho = (rw.lower + rw.upper) / 2;
    let (tlo, thi) = tau_window(k, rho);
    let tau_w = Window::exact("tau", tlo, thi);
    let r = big_n.powf(rho_w.chosen);
    let t = big_n.powf(tau_w.chosen);
    let (t_lo, t_hi) = (big_n.powf(tau_w.lower), big_n.powf(tau_w.upper));
    let mut notes = vec![threshold_note(&th)];
    let binding = if symbolic {
        None
    } else {
        notes.push(format!("rho needs ({}) < rho < ({}) which is empty", rw.lower, rw.upper));
        Some(format!("{} against {}", rw.upper_by, rw.lower_by))
    };
    Ok(RegimePlan {
        regime: "long_time".into(),
        d,
        k,
        s,
        sigma: Some(sigma),
        n: Some(n),
        big_n,
        windows: vec![rho_w, tau_w],
        r,
        a: 1.0,
        t,
        t_window: (t_lo, t_hi),
        growth_exponent: None,
        margin,
        min_n: None,
        symbolic_feasible: symbolic,
        feasible: false,
        binding,
        ledger: ledger(k, s, n, big_n, r, t, t_lo, t_hi),
        notes,
    }
    .finish())
}

/// Long-time plan at N from the midpoints of the exact ρ and τ windows.
pub fn plan_long_time(d: usize, k: usize, s: f64, sigma: f64, n: u64, big_n: f64, margin: f64) -> Result<RegimePlan> {
    let mut plan = build(d, k, s, sigma, n, big_n, margin)?;
    if plan.symbolic_feasible {
        plan.min_n = minimum_n(|x| build(d, k, s, sigma, n, x, margin).ok().map(|p| p.feasible));
    }
    Ok(plan)
}

/// Safety factors for [`plan_long_time_calibrated`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// Data distance is held at 1/(n·distance_safety).
    pub distance_safety: f64,
    /// Predicted ‖Ξ₁(T)‖ must reach n·growth_safety.
    pub growth_safety: f64,
}

impl Default for Calibration {
    fn default() -> Self {
        Self { distance_safety: 1.05, growth_safety: 1.0 }
    }
}

/// Long-time plan sized for a finite N.
///
/// The midpoint plan needs astronomically large N before every "≪" holds with
/// a fixed factor. Here R is the largest value keeping the exact data distance
/// √(Σ_Ω ⟨ξ⟩^{2s})·R below 1/n, the lower end of the T window is where the
/// leading zero-mode term of Ξ₁ reaches n, and the upper end is the tightest
/// of the remainder and time conditions and 1/n. The ledger is evaluated with factor 1; dominance of
/// Ξ₁ over the other levels is left to measurement.
pub fn plan_long_time_calibrated(
    d: usize,
    k: usize,
    s: f64,
    sigma: f64,
    n: u64,
    big_n: u64,
    cal: &Calibration,
) -> Result<RegimePlan> {
    let mut plan = build(d, k, s, sigma, n, big_n as f64, 1.0)?;
    if !plan.symbolic_feasible {
        return Ok(plan);
    }
    let spec = BoxSpec::new(d, k, big_n, 1.0, Variant::LongTime)?;
    let unit: f64 = spec
        .support()
        .iter()
        .map(|x| bracket(((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) as f64).sqrt()).powf(2.0 * s))
        .sum::<f64>()
        .sqrt();
    let nf = n as f64;
    let kf = k as f64;
    let bn = big_n as f64;
    let r = 1.0 / (nf * cal.distance_safety * unit);
    let c = long_time_zero_mode_coefficient(k, big_n, d)?.abs();
    // growth condition with its constant: the zero mode of Ξ₁ is c_k R^k T
    let growth_lo = cal.growth_safety * nf / (c * r.powf(kf));
    let t_lo = growth_lo.max(1.0 / bn);
    let t_hi = [
        r.powf(-(kf - 1.0)) * bn,
        r.powf(kf / 3.0) * bn.powf(-1.0 / 3.0),
        r.powf(-kf * (kf - 1.0) / (kf + 1.0)) * bn.powf((kf - 1.0) / (kf + 1.0)),
        r.powf(kf) / bn,
        1.0,
        1.0 / nf,
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min);
    // the strict bound t < 1/n stays strict
    let t_hi = t_hi * (1.0 - 1e-9);
    let t = (t_lo * t_hi).sqrt();
    plan.regime = "long_time_calibrated".into();
    plan.r = r;
    plan.t = t;
    plan.t_window = (t_lo, t_hi);
    plan.ledger = ledger(k, s, n, bn, r, t, t_lo, t_hi);
    if let Some(e) = plan.ledger.iter_mut().find(|e| e.name.starts_with("growth:")) {
        *e = LedgerEntry::new("growth: T >> R^-k N n", Relation::Much, growth_lo, t);
    }
    plan.ledger.push(LedgerEntry::new("t < 1/n", Relation::Less, t, 1.0 / nf));
    plan.notes.push(format!(
        "calibrated: R from exact distance (safety {}), the growth condition uses the zero-mode constant c_k = {c:.6e} in place of 1/N",
        cal.distance_safety
    ));
    plan.binding = None;
    Ok(plan.finish())
}
