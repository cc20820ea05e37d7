use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::field::SpectralField;
use super::lattice::FrequencyLattice;
use crate::{Error, Result};

/// Largest padded transform (total points) a product engine will allocate.
pub const MAX_PADDED_POINTS: usize = 1 << 26;

/// Dealiased multilinear products on one lattice.
///
/// Coefficients are zero-padded to L ≥ (k+1)M + 1 points per axis, so every
/// product of at most `k` lattice fields is exact on the lattice after
/// truncation: wrapped frequencies of a degree-k product stay outside [−M, M].
pub struct ProductEngine {
    lattice: FrequencyLattice,
    degree: usize,
    l: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for ProductEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProductEngine")
            .field("lattice", &self.lattice)
            .field("degree", &self.degree)
            .field("padded", &self.l)
            .finish()
    }
}

fn smooth_size(min: usize) -> usize {
    let mut n = min.max(1);
    loop {
        let mut m = n;
        for p in [2, 3, 5, 7] {
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        if m == 1 {
            return n;
        }
        n += 1;
    }
}

impl ProductEngine {
    pub fn new(lattice: FrequencyLattice, degree: usize) -> Result<Self> {
        Self::with_input_radius(lattice, degree, lattice.cutoff())
    }

    /// Engine for factors supported in ‖ξ‖∞ ≤ `radius`; the padding shrinks to
    /// degree·radius + M + 1. Factors with wider support alias.
    pub fn with_input_radius(lattice: FrequencyLattice, degree: usize, radius: usize) -> Result<Self> {
        if degree < 1 {
            return Err(Error::Domain("product degree must be at least 1".into()));
        }
        let radius = radius.min(lattice.cutoff());
        let l = smooth_size(degree * radius + lattice.cutoff() + 1);
        let total = l.checked_pow(lattice.dim() as u32).unwrap_or(usize::MAX);
        if total > MAX_PADDED_POINTS {
            return Err(Error::Config(format!(
                "padded grid {l}^{} exceeds {MAX_PADDED_POINTS} points",
                lattice.dim()
            )));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            lattice,
            degree,
            l,
            forward: planner.plan_fft_forward(l),
            inverse: planner.plan_fft_inverse(l),
        })
    }

    pub fn lattice(&self) -> &FrequencyLattice {
        &self.lattice
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn padded_side(&self) -> usize {
        self.l
    }

    fn total(&self) -> usize {
        self.l.pow(self.lattice.dim() as u32)
    }

    fn padded_index(&self, lattice_index: usize) -> usize {
        let xi = self.lattice.freq(lattice_index);
        let l = self.l as i64;
        xi[..self.lattice.dim()].iter().fold(0usize, |acc, &c| acc * self.l + c.rem_euclid(l) as usize)
    }

    fn transform(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let d = self.lattice.dim();
        let l = self.l;
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        // last axis is contiguous
        fft.process_with_scratch(data, &mut scratch);
        let mut line = vec![Complex64::new(0.0, 0.0); l];
        for axis in (0..d.saturating_sub(1)).rev() {
            let stride = l.pow((d - 1 - axis) as u32);
            let block = stride * l;
            for base in (0..data.len()).step_by(block) {
                for offset in 0..stride {
                    let start = base + offset;
                    for (j, v) in line.iter_mut().enumerate() {
                        *v = data[start + j * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for (j, v) in line.iter().enumerate() {
                        data[start + j * stride] = *v;
                    }
                }
            }
        }
    }

    /// Grid values u(x_j) on the padded physical grid.
    pub fn to_physical(&self, f: &SpectralField) -> Result<Vec<Complex64>> {
        if f.lattice() != &self.lattice {
            return Err(Error::LatticeMismatch("field lattice differs from engine lattice".into()));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); self.total()];
        for (i, c) in f.coeffs().iter().enumerate() {
            if c.re != 0.0 || c.im != 0.0 {
                data[self.padded_index(i)] = *c;
            }
        }
        self.transform(&mut data, &self.inverse);
        Ok(data)
    }

    /// Lattice coefficients of grid values (truncating frequencies beyond M).
    pub fn from_physical(&self, mut data: Vec<Complex64>) -> SpectralField {
        assert_eq!(data.len(), self.total());
        self.transform(&mut data, &self.forward);
        let scale = 1.0 / self.total() as f64;
        let coeffs = (0..self.lattice.len()).map(|i| data[self.padded_index(i)] * scale).collect();
        SpectralField::from_coeffs(self.lattice, coeffs).expect("lattice sized")
    }

    /// Coefficients of Π fᵢ restricted to the lattice.
    pub fn product(&self, factors: &[&SpectralField]) -> Result<SpectralField> {
        if factors.is_empty() || factors.len() > self.degree {
            return Err(Error::Config(format!(
                "{} factors for an engine of degree {}",
                factors.len(),
                self.degree
            )));
        }
        let mut acc = self.to_physical(factors[0])?;
        for f in &factors[1..] {
            let g = self.to_physical(f)?;
            for (a, b) in acc.iter_mut().zip(&g) {
                *a *= b;
            }
        }
        Ok(self.from_physical(acc))
    }
}

/// Coefficients of u^k for a real field u, exact on the lattice.
pub fn pointwise_power(f: &SpectralField, k: usize) -> Result<SpectralField> {
    if k < 2 {
        return Err(Error::Domain(format!("power k = {k} < 2")));
    }
    let engine = ProductEngine::new(*f.lattice(), k)?;
    let phys = engine.to_physical(f)?;
    let powered = phys.into_iter().map(|v| v.powu(k as u32)).collect();
    Ok(engine.from_physical(powered))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn smooth_sizes() {
        assert_eq!(smooth_size(11), 12);
        assert_eq!(smooth_size(13), 14);
        assert_eq!(smooth_size(17), 18);
        assert_eq!(smooth_size(1), 1);
    }

    #[test]
    fn constant_power() {
        let lat = FrequencyLattice::new(2, 3).unwrap();
        let f = SpectralField::from_modes(lat, &[([0, 0, 0], c(1.5))]).unwrap();
        let g = pointwise_power(&f, 3).unwrap();
        assert!((g.get(&[0, 0, 0]).unwrap() - c(3.375)).norm() < 1e-14);
        assert!(g.coeffs().iter().enumerate().all(|(i, v)| i == lat.zero_index() || v.norm() < 1e-14));
    }

    #[test]
    fn cosine_squared() {
        let lat = FrequencyLattice::new(1, 4).unwrap();
        let f = SpectralField::from_modes(lat, &[([1, 0, 0], c(1.0)), ([-1, 0, 0], c(1.0))]).unwrap();
        let g = pointwise_power(&f, 2).unwrap();
        for (xi, v) in [(-2, 1.0), (0, 2.0), (2, 1.0), (1, 0.0), (4, 0.0)] {
            assert!((g.get(&[xi, 0, 0]).unwrap() - c(v)).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_too_many_factors() {
        let lat = FrequencyLattice::new(1, 2).unwrap();
        let e = ProductEngine::new(lat, 2).unwrap();
        let f = SpectralField::zeros(lat);
        assert!(e.product(&[&f, &f, &f]).is_err());
    }
}
