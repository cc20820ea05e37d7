use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spectral_core::{fl01_pair_norm, hs_pair_norm, FieldPair, Freq, FrequencyLattice, SpectralField};
use crate::{Error, Result};

/// Frequencies 0 < |ξ| ≤ 4 carry the background.
pub const BACKGROUND_RADIUS: f64 = 4.0;

fn canonical(xi: &Freq) -> bool {
    xi.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// Deterministic real low-frequency pair with ℋ⁰ and F⃗L¹ norms in [1/2, 2].
///
/// Coefficients are drawn from a seeded ChaCha stream: uniform phases,
/// magnitudes in [1/2, 1] times ⟨ξ⟩^{-6d}. The unit shell dominates, which
/// keeps the two norms within a factor 4 of each other for every d ≤ 3 and
/// so lets the rescaling below put both in range. The mean is left at zero.
/// The pair is scaled so that the geometric mean of the two norms equals
/// `amplitude`.
pub fn background_data(lattice: FrequencyLattice, seed: u64, amplitude: f64) -> Result<FieldPair> {
    if !(0.5..=2.0).contains(&amplitude) {
        return Err(Error::Domain(format!("background amplitude {amplitude} outside [1/2, 2]")));
    }
    if (lattice.cutoff() as f64) < BACKGROUND_RADIUS {
        return Err(Error::Config(format!("lattice cutoff {} below background radius", lattice.cutoff())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u0 = SpectralField::zeros(lattice);
    let mut u1 = SpectralField::zeros(lattice);
    for i in 0..lattice.len() {
        let xi = lattice.freq(i);
        let r2: i64 = xi.iter().map(|c| c * c).sum();
        if r2 == 0 || r2 as f64 > BACKGROUND_RADIUS * BACKGROUND_RADIUS || !canonical(&xi) {
            continue;
        }
        let decay = (1.0 + r2 as f64).powi(-3 * lattice.dim() as i32);
        let draw = |rng: &mut ChaCha8Rng| Complex64::from_polar(rng.gen_range(0.5..1.0), rng.gen_range(0.0..TAU)) * decay;
        let a = draw(&mut rng);
        let b = draw(&mut rng) * (1.0 + r2 as f64).sqrt();
        let j = lattice.negate_index(i);
        u0.coeffs_mut()[i] = a;
        u0.coeffs_mut()[j] = a.conj();
        u1.coeffs_mut()[i] = b;
        u1.coeffs_mut()[j] = b.conj();
    }
    let pair = FieldPair { u0, u1 };
    let h = hs_pair_norm(&pair, 0.0);
    let f = fl01_pair_norm(&pair);
    if h == 0.0 {
        return Err(Error::Domain("degenerate background draw".into()));
    }
    let scaled = pair.scaled(amplitude / (h * f).sqrt());
    let (h, f) = (hs_pair_norm(&scaled, 0.0), fl01_pair_norm(&scaled));
    if !(0.5..=2.0).contains(&h) || !(0.5..=2.0).contains(&f) {
        return Err(Error::Domain(format!("background norms ({h:.3}, {f:.3}) cannot both lie in [1/2, 2]")));
    }
    Ok(scaled)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_normalised() {
        let lat = FrequencyLattice::new(1, 8).unwrap();
        let a = background_data(lat, 7, 1.0).unwrap();
        assert_eq!(a, background_data(lat, 7, 1.0).unwrap());
        assert_ne!(a, background_data(lat, 8, 1.0).unwrap());
        assert!(a.u0.conjugate_symmetry_defect() == 0.0 && a.u1.conjugate_symmetry_defect() == 0.0);
        assert!(background_data(lat, 7, 0.0).is_err());
        for d in 1..=3 {
            let lat = FrequencyLattice::new(d, 4).unwrap();
            for seed in 0..200 {
                assert!(background_data(lat, seed, 1.0).is_ok(), "d = {d}, seed = {seed}");
            }
        }
        assert!(background_data(FrequencyLattice::new(1, 3).unwrap(), 7, 1.0).is_err());
    }
}
