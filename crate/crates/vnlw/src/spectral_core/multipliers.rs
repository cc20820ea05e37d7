use serde::{Deserialize, Serialize};

use super::field::{FieldPair, SpectralField};
use super::lattice::{abs, Freq};
use crate::{Error, Result};

/// √3/2, the frequency of the damped oscillation per unit |ξ|.
pub const SQRT3_2: f64 = 0.866_025_403_784_438_6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Multiplier {
    /// e^{−|ξ|t/2}
    P,
    /// cos(β t) + sin(β t)/√3 with β = (√3/2)|ξ|
    V0,
    /// sin(β t)/β, equal to t at ξ = 0
    V1,
    /// P·V1
    W,
}

/// sin(x)/x with the removable singularity filled in.
#[inline]
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Symbol value as a function of |ξ|.
#[inline]
pub fn multiplier_by_abs(kind: Multiplier, t: f64, r: f64) -> f64 {
    let beta = SQRT3_2 * r;
    match kind {
        Multiplier::P => (-0.5 * r * t).exp(),
        Multiplier::V0 => (beta * t).cos() + (beta * t).sin() / 3f64.sqrt(),
        Multiplier::V1 => t * sinc(beta * t),
        Multiplier::W => (-0.5 * r * t).exp() * t * sinc(beta * t),
    }
}

pub fn multiplier_value(kind: Multiplier, t: f64, xi: &Freq) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("negative time {t}")));
    }
    Ok(multiplier_by_abs(kind, t, abs(xi)))
}

/// V(t)(u₀, u₁) = P(t)(V0(t) û₀ + V1(t) û₁), frequency by frequency.
pub fn apply_linear_flow(t: f64, pair: &FieldPair) -> Result<SpectralField> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("negative time {t}")));
    }
    pair.u0.check_same_lattice(&pair.u1)?;
    let lat = *pair.lattice();
    let coeffs = pair
        .u0
        .coeffs()
        .iter()
        .zip(pair.u1.coeffs())
        .enumerate()
        .map(|(i, (a, b))| {
            if a.norm_sqr() == 0.0 && b.norm_sqr() == 0.0 {
                return *a;
            }
            let r = abs(&lat.freq(i));
            let p = multiplier_by_abs(Multiplier::P, t, r);
            (a * multiplier_by_abs(Multiplier::V0, t, r) + b * multiplier_by_abs(Multiplier::V1, t, r)) * p
        })
        .collect();
    SpectralField::from_coeffs(lat, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::FrequencyLattice;
    use num_complex::Complex64;

    #[test]
    fn limits_at_zero_frequency() {
        let z = [0, 0, 0];
        assert_eq!(multiplier_value(Multiplier::V1, 0.37, &z).unwrap(), 0.37);
        assert_eq!(multiplier_value(Multiplier::P, 5.0, &z).unwrap(), 1.0);
        assert_eq!(multiplier_value(Multiplier::W, 0.0, &[4, 0, 0]).unwrap(), 0.0);
        assert!(multiplier_value(Multiplier::P, -1.0, &z).is_err());
    }

    #[test]
    fn v1_vanishes_at_half_period() {
        let n = 12.0;
        let t = std::f64::consts::PI / (SQRT3_2 * n);
        assert!(multiplier_by_abs(Multiplier::V1, t, n).abs() < 1e-16);
    }

    #[test]
    fn flow_identity_and_velocity_mean() {
        let lat = FrequencyLattice::new(1, 4).unwrap();
        let u0 = SpectralField::from_modes(lat, &[([3, 0, 0], Complex64::new(1.0, 2.0))]).unwrap();
        let u1 = SpectralField::from_modes(lat, &[([0, 0, 0], Complex64::new(0.5, 0.0))]).unwrap();
        let pair = FieldPair::new(u0.clone(), SpectralField::zeros(lat)).unwrap();
        assert_eq!(apply_linear_flow(0.0, &pair).unwrap(), u0);
        let pair = FieldPair::new(SpectralField::zeros(lat), u1).unwrap();
        let out = apply_linear_flow(0.8, &pair).unwrap();
        assert_eq!(out.get(&[0, 0, 0]).unwrap(), Complex64::new(0.4, 0.0));
    }

    #[test]
    fn single_mode_matches_scalar_formula() {
        let lat = FrequencyLattice::new(1, 20).unwrap();
        let n = 16.0;
        let t = std::f64::consts::PI / (SQRT3_2 * n) / 3.0;
        let u0 = SpectralField::from_modes(lat, &[([16, 0, 0], Complex64::new(1.0, 0.0))]).unwrap();
        let out = apply_linear_flow(t, &FieldPair::new(u0, SpectralField::zeros(lat)).unwrap()).unwrap();
        let expect = (-n * t / 2.0).exp() * ((SQRT3_2 * n * t).cos() + (SQRT3_2 * n * t).sin() / 3f64.sqrt());
        assert!((out.get(&[16, 0, 0]).unwrap().re - expect).abs() < 1e-15);
    }
}
