//! End-to-end norm inflation at the smallest N the calibrated planner accepts:
//! data within 1/n of zero whose solution exceeds n before time 1/n.
//!
//! cargo run --release --example long_time_inflation -- 2

use vnlw::harness::{minimal_long_time_n, run_long_time_inflation, Config, LongTimeRun};

fn main() -> vnlw::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let cfg = Config::default();
    let (d, k, s) = (1, 2, -0.75);
    let minimal = minimal_long_time_n(d, k, s, s, n, &cfg)?;
    println!("smallest feasible N for n = {n}: {}", minimal.big_n);

    let run = LongTimeRun::new(d, k, s, s, n);
    let report = run_long_time_inflation(&run, &cfg)?;
    if let Some(plan) = &report.plan {
        println!("plan: N = {}, R = {:.4}, T window [{:.4}, {:.4}]", plan.big_n, plan.r, plan.t_window.0, plan.t_window.1);
    }
    for check in &report.checks {
        println!("  {:<28} {:>10.5} {:<12} {}", check.name, check.value, check.bound, if check.pass { "ok" } else { "FAIL" });
    }
    for dom in &report.dominance {
        println!("  {} / {} at t = {:.3}: {:.3e}", dom.term, dom.reference, dom.t, dom.ratio);
    }
    println!("verdict: {}", report.verdict);
    Ok(())
}
