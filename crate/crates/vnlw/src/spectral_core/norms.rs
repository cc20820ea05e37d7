use serde::{Deserialize, Serialize};

use super::field::{FieldPair, SpectralField};
use super::lattice::abs;
use super::bracket;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SobolevIndex {
    /// H^s with weight ⟨ξ⟩^s.
    Inhomogeneous(f64),
    /// Ḣ^s with weight |ξ|^s.
    Homogeneous(f64),
    /// FL^{s,p}: ℓ^p norm of ⟨ξ⟩^s f̂.
    FourierLebesgue { s: f64, p: f64 },
}

/// Inhomogeneous H^s norm, (Σ_ξ ⟨ξ⟩^{2s} |f̂(ξ)|²)^{1/2}.
pub fn hs_norm(f: &SpectralField, s: f64) -> f64 {
    let lat = f.lattice();
    let sum: f64 = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
        .map(|(i, c)| bracket(abs(&lat.freq(i))).powf(2.0 * s) * c.norm_sqr())
        .sum();
    sum.sqrt()
}

/// ℓ^p norm of ⟨ξ⟩^s f̂.
pub fn fl_norm(f: &SpectralField, s: f64, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("p = {p} < 1")));
    }
    let lat = f.lattice();
    let weighted = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
        .map(|(i, c)| bracket(abs(&lat.freq(i))).powf(s) * c.norm());
    Ok(if p.is_infinite() {
        weighted.fold(0.0, f64::max)
    } else if p == 1.0 {
        weighted.sum()
    } else {
        weighted.map(|x| x.powf(p)).sum::<f64>().powf(1.0 / p)
    })
}

fn homogeneous_norm(f: &SpectralField, s: f64) -> Result<f64> {
    let lat = f.lattice();
    let mut sum = 0.0;
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let a = abs(&lat.freq(i));
        let w = if a == 0.0 {
            if s < 0.0 {
                return Err(Error::Domain(format!("homogeneous norm with s = {s} < 0 of a field with nonzero mean")));
            }
            // |0|^0 = 1; |0|^{2s} = 0 for s > 0
            if s == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            a.powf(2.0 * s)
        };
        sum += w * c.norm_sqr();
    }
    Ok(sum.sqrt())
}

/// Norm of a single field in any of the supported flavors.
pub fn norm(f: &SpectralField, index: SobolevIndex) -> Result<f64> {
    match index {
        SobolevIndex::Inhomogeneous(s) => Ok(hs_norm(f, s)),
        SobolevIndex::Homogeneous(s) => homogeneous_norm(f, s),
        SobolevIndex::FourierLebesgue { s, p } => fl_norm(f, s, p),
    }
}

/// ℋ^s = H^s × H^{s−1} norm of a pair.
pub fn hs_pair_norm(pair: &FieldPair, s: f64) -> f64 {
    hs_norm(&pair.u0, s).hypot(hs_norm(&pair.u1, s - 1.0))
}

/// F⃗L¹ = FL^{0,1} × FL^{−1,1} norm of a pair (sum of the components).
pub fn fl01_pair_norm(pair: &FieldPair) -> f64 {
    fl_norm(&pair.u0, 0.0, 1.0).unwrap() + fl_norm(&pair.u1, -1.0, 1.0).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::FrequencyLattice;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn single_mode_negative_index() {
        let lat = FrequencyLattice::new(2, 4).unwrap();
        let f = SpectralField::from_modes(lat, &[([3, 0, 0], c(2.0))]).unwrap();
        assert!((hs_norm(&f, -1.0) - 2.0 / 10f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn parseval_two_modes() {
        let lat = FrequencyLattice::new(1, 3).unwrap();
        let f = SpectralField::from_modes(lat, &[([1, 0, 0], c(1.0)), ([-1, 0, 0], c(1.0))]).unwrap();
        assert!((hs_norm(&f, 0.0) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(hs_norm(&SpectralField::zeros(lat), 0.7), 0.0);
    }

    #[test]
    fn fourier_lebesgue_counts() {
        let lat = FrequencyLattice::new(1, 3).unwrap();
        let f = SpectralField::from_modes(lat, &[([1, 0, 0], c(1.0)), ([0, 0, 0], c(1.0)), ([-2, 0, 0], c(-1.0))])
            .unwrap();
        assert_eq!(fl_norm(&f, 0.0, 1.0).unwrap(), 3.0);
        assert!(fl_norm(&f, 0.0, 0.5).is_err());
    }

    #[test]
    fn homogeneous_rejects_mean_for_negative_s() {
        let lat = FrequencyLattice::new(1, 2).unwrap();
        let f = SpectralField::from_modes(lat, &[([0, 0, 0], c(1.0))]).unwrap();
        assert!(norm(&f, SobolevIndex::Homogeneous(-0.5)).is_err());
        assert_eq!(norm(&f, SobolevIndex::Homogeneous(0.0)).unwrap(), 1.0);
        assert_eq!(norm(&f, SobolevIndex::Homogeneous(0.5)).unwrap(), 0.0);
    }
}
