//! Above the threshold: the contraction converges on smooth data, the
//! solution map is Lipschitz, and the smoothing constants stay bounded.

use vnlw::harness::{run_wellposedness, schauder_constants, Config, WellposednessRun};

fn main() -> vnlw::Result<()> {
    let cfg = Config::default();
    for (d, k, s) in [(1, 2, -0.25), (1, 3, -0.1), (2, 2, -0.25)] {
        let report = run_wellposedness(&WellposednessRun::new(d, k, s), &cfg)?;
        println!("(d, k, s) = ({d}, {k}, {s}): verdict {}", report.verdict);
        for check in &report.checks {
            println!("    {:<36} {:.4e} ({})", check.name, check.value, check.bound);
        }
    }

    let times: Vec<f64> = (0..5).map(|i| 0.5f64.powi(i)).collect();
    for (sigma, p, q) in [(0.0, 2.0, 2.0), (0.5, 2.0, 2.0), (0.0, 1.0, 2.0)] {
        let fit = schauder_constants(1, sigma, p, q, &times)?;
        println!("smoothing sigma = {sigma}, L^{p} -> L^{q}: C = {:.4}", fit.constant());
    }
    Ok(())
}
