//! Regularity thresholds and the three parameter planners for one (d, k).
//!
//! cargo run --release --example thresholds_and_plans -- 1 5

use vnlw::estimates::thresholds;
use vnlw::regimes::{check_ledger, plan_ck_failure, plan_long_time_calibrated, plan_short_time, Calibration, DEFAULT_MARGIN};

fn main() -> vnlw::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (d, k) = (args.first().copied().unwrap_or(1), args.get(1).copied().unwrap_or(2));
    let th = thresholds(d, k)?;
    println!("d = {d}, k = {k}: s_scal = {}, s_vis = {}, s_m = {}", th.s_scal, th.s_vis, th.s_m);

    println!("\n{:>6} {:>10} {:>14} {:>10}", "s", "short N*", "long (N=1e4)", "ck");
    let mut s = th.s_vis_f64() + 0.25;
    while s > th.s_scal_f64().min(-1.5) {
        // outside the short-time construction's cases the planner refuses
        let short = plan_short_time(d, k, s, 2, 1e6, DEFAULT_MARGIN).ok();
        let long = plan_long_time_calibrated(d, k, s, s, 2, 10_000, &Calibration::default())?;
        let ck = plan_ck_failure(d, k, s, 1024)?;
        let min_n = short.and_then(|p| p.min_n).map(|n| format!("{n:.1e}")).unwrap_or_else(|| "-".into());
        println!("{s:>6.2} {min_n:>10} {:>14} {:>10}", long.feasible, ck.feasible);
        s -= 0.25;
    }

    // a ledger re-read at a stricter margin
    let Ok(plan) = plan_short_time(d, k, th.s_m_f64() - 0.2, 2, 1e8, DEFAULT_MARGIN) else {
        return Ok(());
    };
    let strict = check_ledger(&plan, 100.0);
    println!("\nshort-time ledger at N = 1e8, margin 100: {}", if strict.pass { "holds" } else { "fails" });
    for e in &strict.entries {
        println!("  {:<40} {:>12.4e} {:?} {:>12.4e} {}", e.name, e.lhs, e.relation, e.rhs, if e.pass { "ok" } else { "FAIL" });
    }
    Ok(())
}
