//! Box-supported data and the smooth background: support, zero-sum tuples and
//! the exact distance to zero against R N^s A^(d/2).

use vnlw::data_factory::{background_data, build_adversarial, describe, BoxSpec, Variant};
use vnlw::spectral_core::{fl01_pair_norm, hs_pair_norm, FrequencyLattice};

fn main() -> vnlw::Result<()> {
    let s = -0.75;
    println!("{:>2} {:>2} {:>5} {:>6} {:>8} {:>6} {:>12} {:>12}", "d", "k", "N", "A", "support", "zero", "||.||_H^s", "R N^s A^d/2");
    for (d, k, n, a) in [(1, 2, 64, 8.0), (1, 3, 64, 8.0), (1, 2, 1024, 128.0), (2, 2, 64, 8.0), (2, 3, 64, 16.0), (3, 2, 32, 8.0)] {
        let spec = BoxSpec::new(d, k, n, a, Variant::LongTime)?;
        let lattice = FrequencyLattice::new(d, spec.required_cutoff())?;
        let info = describe(&build_adversarial(spec, 1.0, lattice)?, s)?;
        println!(
            "{d:>2} {k:>2} {n:>5} {a:>6} {:>8} {:>6} {:>12.5e} {:>12.5e}",
            info.support_count, info.zero_sum_tuples, info.hs_norm, info.predicted
        );
    }

    println!("\nbackground data, seed 7:");
    for d in 1..=3 {
        let pair = background_data(FrequencyLattice::new(d, 6)?, 7, 1.0)?;
        println!("  d = {d}: H^0 norm {:.4}, FL^(0,1) norm {:.4}", hs_pair_norm(&pair, 0.0), fl01_pair_norm(&pair));
    }
    Ok(())
}
