//! Unit-norm box data whose first iterate grows like N^(−ks−1+(k/2−1)d),
//! so the data-to-solution map cannot be C^k at zero.

use vnlw::harness::{run_ck_failure, Config};
use vnlw::regimes::ck_growth_exponent;

fn main() -> vnlw::Result<()> {
    let cfg = Config::default();
    for (d, k, s, tol) in [(1, 2, -0.75, 0.15), (1, 3, -0.6, 0.15), (1, 2, -0.4, 0.15)] {
        let report = run_ck_failure(d, k, s, &[64, 128, 256, 512], tol, &cfg)?;
        let fit = &report.fits[0];
        println!(
            "(d, k, s) = ({d}, {k}, {s}): predicted exponent {:+.3}, fitted {:+.3}",
            ck_growth_exponent(d, k, s),
            fit.slope
        );
        for sample in report.samples.iter().filter(|x| x.level == Some(1)) {
            println!("    N = {:>4}  ||Xi1||_H^s = {:.4e}", sample.big_n, sample.norm_hs.unwrap_or(f64::NAN));
        }
        for note in &report.notes {
            println!("    {note}");
        }
    }
    Ok(())
}
