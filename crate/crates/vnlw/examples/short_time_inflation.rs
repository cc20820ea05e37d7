//! Short-time growth of the first iterate: ‖Ξ₁(t)‖ ~ R^k t² for t ≪ 1/N.
//!
//! Writes the sample table to short_time.csv.

use vnlw::harness::{emit_report, run_short_time_inflation, Config, Format, ShortTimeRun};

fn main() -> vnlw::Result<()> {
    let cfg = Config::default();
    let run = ShortTimeRun::standard(1, 3, -0.5, vec![64, 128, 256]);
    let report = run_short_time_inflation(&run, &cfg)?;
    for fit in &report.fits {
        let expected = fit.expected.zip(fit.tolerance).map(|(e, t)| format!("{e} ± {t}")).unwrap_or_default();
        println!("{:<20} slope {:>9.5}  expected {expected}  {}", fit.name, fit.slope, pass(fit.pass));
    }
    for dom in &report.dominance {
        println!("{} vs {} at t = {:.2e}: ratio {:.2e}  {}", dom.term, dom.reference, dom.t, dom.ratio, pass(dom.pass));
    }
    for check in &report.checks {
        println!("{:<32} {:.3e} ({})  {}", check.name, check.value, check.bound, pass(check.pass));
    }
    emit_report(&report, Format::Csv, "short_time.csv".as_ref())?;
    println!("verdict: {}; {} samples in short_time.csv", pass(report.verdict), report.samples.len());
    Ok(())
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
