use std::f64::consts::PI;

use crate::data_factory::{build_sigma, Variant};
use crate::spectral_core::Freq;
use crate::{Error, Result};

/// Phase data of a frequency tuple ξ̄ with sign pattern ε̄.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseTuple {
    /// Φ = |Σξⱼ| − Σ|ξⱼ| ≤ 0
    pub phi: f64,
    /// Ψ = Σ εⱼ|ξⱼ|
    pub psi: f64,
    /// S = Σ εⱼ
    pub s: i32,
}

fn norm(x: &Freq) -> f64 {
    ((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) as f64).sqrt()
}

impl PhaseTuple {
    pub fn new(xis: &[Freq], eps: &[i8]) -> Self {
        assert_eq!(xis.len(), eps.len());
        let mut total = [0i64; 3];
        let mut sum_abs = 0.0;
        let mut psi = 0.0;
        for (x, &e) in xis.iter().zip(eps) {
            for a in 0..3 {
                total[a] += x[a];
            }
            let n = norm(x);
            sum_abs += n;
            psi += e as f64 * n;
        }
        Self { phi: norm(&total) - sum_abs, psi, s: eps.iter().map(|&e| e as i32).sum() }
    }
}

/// I(ξ̄, ε̄) = −(2Φ cos(Sπ/6) − 2√3 Ψ sin(Sπ/6)) / (Φ² + 3Ψ²).
pub fn big_i(xis: &[Freq], eps: &[i8]) -> Result<f64> {
    let p = PhaseTuple::new(xis, eps);
    let den = p.phi * p.phi + 3.0 * p.psi * p.psi;
    if den == 0.0 {
        return Err(Error::Domain("Φ² + 3Ψ² = 0".into()));
    }
    let arg = p.s as f64 * PI / 6.0;
    Ok(-(2.0 * p.phi * arg.cos() - 2.0 * 3f64.sqrt() * p.psi * arg.sin()) / den)
}

pub(crate) fn sign_patterns(k: usize) -> Vec<Vec<i8>> {
    (0..1usize << k)
        .map(|mask| (0..k).map(|j| if mask >> j & 1 == 0 { 1 } else { -1 }).collect())
        .collect()
}

/// Σ over ε̄ ∈ {±1}^k of I(ξ̄, ε̄).
pub fn big_i_sum(xis: &[Freq]) -> Result<f64> {
    sign_patterns(xis.len()).iter().map(|eps| big_i(xis, eps)).sum()
}

/// Coefficient c with Ξ₁(φ)(t, 0) ≈ −c·Rᵏ·t for unit boxes (A = 1) and N⁻¹ ≪ t.
///
/// c = 3^{−k/2} Σ over zero-sum tuples of Σ_k of the ε-sum of I.
pub fn long_time_zero_mode_coefficient(k: usize, n: u64, d: usize) -> Result<f64> {
    let sigma = build_sigma(k, n, Variant::LongTime, d);
    let mut total = 0.0;
    let mut idx = vec![0usize; k];
    loop {
        let tuple: Vec<Freq> = idx.iter().map(|&i| sigma[i]).collect();
        if tuple.iter().fold(0, |a, x| a + x[0]) == 0 {
            total += big_i_sum(&tuple)?;
        }
        let mut j = 0;
        while j < k {
            idx[j] += 1;
            if idx[j] < sigma.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == k {
            break;
        }
    }
    Ok(total / 3f64.powf(k as f64 / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_antipodal_pair_is_three_over_n() {
        for n in [64i64, 128, 256] {
            let v = big_i_sum(&[[n, 0, 0], [-n, 0, 0]]).unwrap();
            assert!((v * n as f64 - 3.0).abs() < 1e-12);
        }
        let c = long_time_zero_mode_coefficient(2, 100, 1).unwrap();
        assert!((c * 100.0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn phase_signs() {
        let p = PhaseTuple::new(&[[3, 0, 0], [-5, 1, 0]], &[1, -1]);
        assert!(p.phi <= 0.0);
        assert_eq!(p.s, 0);
        let q = PhaseTuple::new(&[[3, 0, 0], [5, 0, 0]], &[1, 1]);
        assert!(q.phi.abs() < 1e-15);
        assert!(big_i(&[[0, 0, 0], [0, 0, 0]], &[1, -1]).is_err());
    }
}
