use super::plan::{threshold_note, LedgerEntry, RegimePlan, Relation};
use crate::data_factory::{BoxSpec, Variant};
use crate::estimates::thresholds;
use crate::spectral_core::bracket;
use crate::{Error, Result};

/// Growth exponent −ks − 1 + (k/2 − 1)d of ‖Ξ₁‖_{H^s} for unit data.
pub fn ck_growth_exponent(d: usize, k: usize, s: f64) -> f64 {
    let (df, kf) = (d as f64, k as f64);
    -kf * s - 1.0 + (kf / 2.0 - 1.0) * df
}

/// ‖1_Ω‖_{H^s} for the box support of `spec`.
pub fn indicator_norm(spec: &BoxSpec, s: f64) -> f64 {
    spec.support()
        .iter()
        .map(|x| bracket(((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) as f64).sqrt()).powf(2.0 * s))
        .sum::<f64>()
        .sqrt()
}

/// Data for the unbounded first iterate: A = N/log N, t = 1/log N and R
/// normalising ‖(φ, 0)‖_{ℋ^s} to exactly 1.
pub fn plan_ck_failure(d: usize, k: usize, s: f64, big_n: u64) -> Result<RegimePlan> {
    if !(2..=5).contains(&k) {
        return Err(Error::Regime(format!("needs 2 <= k <= 5, got {k}")));
    }
    if big_n < 3 {
        return Err(Error::Domain(format!("N = {big_n} too small for log N > 1")));
    }
    let th = thresholds(d, k)?;
    let nf = big_n as f64;
    let a = nf / nf.ln();
    let t = 1.0 / nf.ln();
    let spec = BoxSpec::new(d, k, big_n, a, Variant::LongTime)?;
    let r = 1.0 / indicator_norm(&spec, s);
    let exponent = ck_growth_exponent(d, k, s);
    let s_vis = th.s_vis_f64();
    let ledger = vec![
        LedgerEntry::new("growth exponent -ks-1+(k/2-1)d > 0", Relation::Less, 0.0, exponent),
        LedgerEntry::new("s < s_vis", Relation::Less, s, s_vis),
        LedgerEntry::new("1 <= A", Relation::LessEq, 1.0, a),
        LedgerEntry::new("A <= N", Relation::LessEq, a, nf),
        LedgerEntry::new("t <= 1", Relation::LessEq, t, 1.0),
    ];
    let mut notes = vec![threshold_note(&th), format!("R = N^(-s) A^(-d/2) would give {:.6e}", nf.powf(-s) * a.powf(-(d as f64) / 2.0))];
    if !spec.well_separated() {
        notes.push("A > N/8: boxes are disjoint on the lattice but not well separated".into());
    }
    Ok(RegimePlan {
        regime: "ck_failure".into(),
        d,
        k,
        s,
        sigma: None,
        n: None,
        big_n: nf,
        windows: Vec::new(),
        r,
        a,
        t,
        t_window: (t, t),
        growth_exponent: Some(exponent),
        margin: 1.0,
        min_n: None,
        symbolic_feasible: exponent > 0.0,
        feasible: false,
        binding: (exponent <= 0.0).then(|| format!("growth exponent {exponent} <= 0")),
        ledger,
        notes,
    }
    .finish())
}
