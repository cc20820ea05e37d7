use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::lattice::{Freq, FrequencyLattice};
use crate::{Error, Result};

/// Fourier coefficients on a truncated lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralField {
    lattice: FrequencyLattice,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(lattice: FrequencyLattice) -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0); lattice.len()], lattice }
    }

    pub fn from_coeffs(lattice: FrequencyLattice, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != lattice.len() {
            return Err(Error::LatticeMismatch(format!(
                "{} coefficients for a lattice of {} points",
                coeffs.len(),
                lattice.len()
            )));
        }
        Ok(Self { lattice, coeffs })
    }

    /// Field with the listed modes set; errors if a mode is outside the lattice.
    pub fn from_modes(lattice: FrequencyLattice, modes: &[(Freq, Complex64)]) -> Result<Self> {
        let mut f = Self::zeros(lattice);
        for (xi, c) in modes {
            f.set(xi, *c)?;
        }
        Ok(f)
    }

    pub fn lattice(&self) -> &FrequencyLattice {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn get(&self, xi: &Freq) -> Option<Complex64> {
        self.lattice.index_of(xi).map(|i| self.coeffs[i])
    }

    pub fn set(&mut self, xi: &Freq, c: Complex64) -> Result<()> {
        let i = self
            .lattice
            .index_of(xi)
            .ok_or_else(|| Error::Config(format!("frequency {xi:?} outside lattice")))?;
        self.coeffs[i] = c;
        Ok(())
    }

    pub fn check_same_lattice(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch(format!("{:?} vs {:?}", self.lattice, other.lattice)));
        }
        Ok(())
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self { lattice: self.lattice, coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    /// self += a·other
    pub fn axpy(&mut self, a: f64, other: &Self) -> Result<()> {
        self.check_same_lattice(other)?;
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += y * a;
        }
        Ok(())
    }

    pub fn sum<'a>(lattice: FrequencyLattice, fields: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut out = Self::zeros(lattice);
        for f in fields {
            out.axpy(1.0, f)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest |coeff(ξ) − conj(coeff(−ξ))|; zero for real-valued fields.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let n = self.coeffs.len();
        (0..n)
            .map(|i| (self.coeffs[i] - self.coeffs[n - 1 - i].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Copy onto another lattice, truncating or zero-extending.
    pub fn resample(&self, target: FrequencyLattice) -> Result<Self> {
        if target.dim() != self.lattice.dim() {
            return Err(Error::LatticeMismatch("dimension differs".into()));
        }
        let mut out = Self::zeros(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if let Some(j) = target.index_of(&self.lattice.freq(i)) {
                out.coeffs[j] = *c;
            }
        }
        Ok(out)
    }

    /// Max-abs difference relative to max-abs of `reference`.
    pub fn relative_error(&self, reference: &Self) -> Result<f64> {
        self.check_same_lattice(reference)?;
        let diff = self
            .coeffs
            .iter()
            .zip(&reference.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let scale = reference.max_abs();
        Ok(if scale == 0.0 { diff } else { diff / scale })
    }
}

/// Initial data (u₀, u₁) on a common lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldPair {
    pub u0: SpectralField,
    pub u1: SpectralField,
}

impl FieldPair {
    pub fn new(u0: SpectralField, u1: SpectralField) -> Result<Self> {
        u0.check_same_lattice(&u1)?;
        Ok(Self { u0, u1 })
    }

    pub fn zeros(lattice: FrequencyLattice) -> Self {
        Self { u0: SpectralField::zeros(lattice), u1: SpectralField::zeros(lattice) }
    }

    pub fn lattice(&self) -> &FrequencyLattice {
        self.u0.lattice()
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self { u0: self.u0.scaled(a), u1: self.u1.scaled(a) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.u0.axpy(1.0, &other.u0)?;
        out.u1.axpy(1.0, &other.u1)?;
        Ok(out)
    }

    pub fn resample(&self, target: FrequencyLattice) -> Result<Self> {
        Ok(Self { u0: self.u0.resample(target)?, u1: self.u1.resample(target)? })
    }
}
