use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::spectral_core::{fl01_pair_norm, hs_pair_norm, FieldPair, Freq, FrequencyLattice, SpectralField};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Σ = {±N e₁, ±2N e₁} for every k.
    ShortTime,
    /// Σ = {±N e₁} for even k, {±N e₁, ±2N e₁} for odd k.
    LongTime,
}

/// Frequency centres Σ in dimension `d`.
pub fn build_sigma(k: usize, n: u64, variant: Variant, d: usize) -> Vec<Freq> {
    let n = n as i64;
    let along = |c: i64| -> Freq {
        let mut f = [0i64; 3];
        f[0] = c;
        let _ = d;
        f
    };
    let four = variant == Variant::ShortTime || k % 2 == 1;
    let mut out = vec![along(-n), along(n)];
    if four {
        out.insert(0, along(-2 * n));
        out.push(along(2 * n));
    }
    out
}

/// Largest integer w with w ≤ A/8, the per-axis radius of Q_A ∩ ℤ^d.
pub fn box_half_width(a: f64) -> i64 {
    (a / 8.0 + 1e-12).floor() as i64
}

/// Number of k-tuples from Σ summing to zero.
pub fn zero_sum_tuple_count(k: usize, sigma: &[Freq]) -> u64 {
    fn rec(k: usize, sigma: &[Freq], acc: Freq) -> u64 {
        if k == 0 {
            return u64::from(acc == [0, 0, 0]);
        }
        sigma
            .iter()
            .map(|e| rec(k - 1, sigma, [acc[0] + e[0], acc[1] + e[1], acc[2] + e[2]]))
            .sum()
    }
    rec(k, sigma, [0, 0, 0])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxSpec {
    pub d: usize,
    pub k: usize,
    pub n: u64,
    pub a: f64,
    pub variant: Variant,
}

impl BoxSpec {
    /// Validates A ≥ 1, N ≥ 1 and A ≤ N. Lattice boxes stay disjoint for A < 4N;
    /// [`BoxSpec::well_separated`] reports the stricter A ≤ N/8.
    pub fn new(d: usize, k: usize, n: u64, a: f64, variant: Variant) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::InvalidSpec(format!("dimension {d} not in 1..=3")));
        }
        if k < 2 {
            return Err(Error::InvalidSpec(format!("k = {k} < 2")));
        }
        if n == 0 {
            return Err(Error::InvalidSpec("N must be positive".into()));
        }
        if !(a >= 1.0) {
            return Err(Error::InvalidSpec(format!("A = {a} < 1")));
        }
        if a > n as f64 {
            return Err(Error::InvalidSpec(format!("A = {a} > N = {n}: boxes overlap")));
        }
        Ok(Self { d, k, n, a, variant })
    }

    pub fn sigma(&self) -> Vec<Freq> {
        build_sigma(self.k, self.n, self.variant, self.d)
    }

    pub fn half_width(&self) -> i64 {
        box_half_width(self.a)
    }

    pub fn well_separated(&self) -> bool {
        self.a <= self.n as f64 / 8.0
    }

    /// |Q_A ∩ ℤ^d|
    pub fn box_count(&self) -> u64 {
        ((2 * self.half_width() + 1) as u64).pow(self.d as u32)
    }

    /// Smallest lattice cutoff holding the support.
    pub fn required_cutoff(&self) -> usize {
        let far = self.sigma().iter().map(|e| e[0].abs()).max().unwrap_or(0);
        (far + self.half_width()) as usize
    }

    /// Ω ∩ ℤ^d, box by box.
    pub fn support(&self) -> Vec<Freq> {
        let w = self.half_width();
        let offsets = box_offsets(self.d, w);
        let mut out = Vec::with_capacity(self.sigma().len() * offsets.len());
        for e in self.sigma() {
            for o in &offsets {
                out.push([e[0] + o[0], e[1] + o[1], e[2] + o[2]]);
            }
        }
        out
    }
}

pub(crate) fn box_offsets(d: usize, w: i64) -> Vec<Freq> {
    let side = (2 * w + 1) as usize;
    let count = side.pow(d as u32);
    (0..count)
        .map(|mut i| {
            let mut f = [0i64; 3];
            for axis in (0..d).rev() {
                f[axis] = (i % side) as i64 - w;
                i /= side;
            }
            f
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversarialData {
    pub spec: BoxSpec,
    pub r: f64,
    pub pair: FieldPair,
    pub support_count: u64,
}

impl AdversarialData {
    pub fn support(&self) -> Vec<Freq> {
        self.spec.support()
    }
}

/// φ̂ = R·1_Ω on `lattice`, zero velocity.
pub fn build_adversarial(spec: BoxSpec, r: f64, lattice: FrequencyLattice) -> Result<AdversarialData> {
    if lattice.dim() != spec.d {
        return Err(Error::Config(format!("lattice dimension {} for data of dimension {}", lattice.dim(), spec.d)));
    }
    if lattice.cutoff() < spec.required_cutoff() {
        return Err(Error::Config(format!(
            "lattice cutoff {} below required {}",
            lattice.cutoff(),
            spec.required_cutoff()
        )));
    }
    let mut u0 = SpectralField::zeros(lattice);
    let support = spec.support();
    for xi in &support {
        u0.set(xi, Complex64::new(r, 0.0))?;
    }
    let count = u0.coeffs().iter().filter(|c| c.re != 0.0).count() as u64;
    if r != 0.0 && count != support.len() as u64 {
        return Err(Error::InvalidSpec("translated boxes overlap on the lattice".into()));
    }
    Ok(AdversarialData {
        spec,
        r,
        pair: FieldPair { u0, u1: SpectralField::zeros(lattice) },
        support_count: support.len() as u64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationDistance {
    /// ‖(φ, 0)‖_{ℋ^s} on the lattice.
    pub exact: f64,
    /// R N^s A^{d/2}
    pub predicted: f64,
}

pub fn perturbation_distance(data: &AdversarialData, s: f64) -> Result<PerturbationDistance> {
    if !(s < 0.0) {
        return Err(Error::Domain(format!("s = {s} must be negative")));
    }
    let spec = &data.spec;
    Ok(PerturbationDistance {
        exact: hs_pair_norm(&data.pair, s),
        predicted: data.r * (spec.n as f64).powf(s) * spec.a.powf(spec.d as f64 / 2.0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DataDescription {
    pub sigma: Vec<Vec<i64>>,
    pub support_count: u64,
    pub zero_sum_tuples: u64,
    pub well_separated: bool,
    pub fl01_norm: f64,
    pub s: f64,
    pub hs_norm: f64,
    #[serde(rename = "predicted_RNsAd2")]
    pub predicted: f64,
}

pub fn describe(data: &AdversarialData, s: f64) -> Result<DataDescription> {
    let dist = perturbation_distance(data, s)?;
    let d = data.spec.d;
    let sigma = data.spec.sigma();
    Ok(DataDescription {
        sigma: sigma.iter().map(|f| f[..d].to_vec()).collect(),
        support_count: data.support_count,
        zero_sum_tuples: zero_sum_tuple_count(data.spec.k, &sigma),
        well_separated: data.spec.well_separated(),
        fl01_norm: fl01_pair_norm(&data.pair),
        s,
        hs_norm: dist.exact,
        predicted: dist.predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::fl_norm;

    #[test]
    fn sigma_sets() {
        assert_eq!(build_sigma(2, 16, Variant::LongTime, 2), vec![[-16, 0, 0], [16, 0, 0]]);
        assert_eq!(build_sigma(3, 16, Variant::LongTime, 1).len(), 4);
        assert_eq!(
            build_sigma(5, 8, Variant::ShortTime, 1),
            vec![[-16, 0, 0], [-8, 0, 0], [8, 0, 0], [16, 0, 0]]
        );
    }

    #[test]
    fn ten_point_support() {
        let spec = BoxSpec::new(1, 2, 16, 16.0, Variant::LongTime).unwrap();
        let lat = FrequencyLattice::new(1, 40).unwrap();
        let data = build_adversarial(spec, 1.0, lat).unwrap();
        assert_eq!(data.support_count, 10);
        assert_eq!(fl_norm(&data.pair.u0, 0.0, 1.0).unwrap(), 10.0);
        assert_eq!(data.pair.u0.conjugate_symmetry_defect(), 0.0);
    }

    #[test]
    fn unit_box_is_sigma() {
        let spec = BoxSpec::new(2, 3, 8, 1.0, Variant::LongTime).unwrap();
        assert_eq!(spec.support(), spec.sigma());
        let lat = FrequencyLattice::new(2, 16).unwrap();
        let zero = build_adversarial(spec, 0.0, lat).unwrap();
        assert!(zero.pair.u0.is_zero());
    }

    #[test]
    fn invalid_specs() {
        assert!(BoxSpec::new(1, 2, 16, 17.0, Variant::ShortTime).is_err());
        assert!(BoxSpec::new(1, 2, 16, 0.5, Variant::ShortTime).is_err());
        let spec = BoxSpec::new(1, 3, 16, 16.0, Variant::LongTime).unwrap();
        assert!(build_adversarial(spec, 1.0, FrequencyLattice::new(1, 33).unwrap()).is_err());
        assert!(build_adversarial(spec, 1.0, FrequencyLattice::new(1, 34).unwrap()).is_ok());
    }

    #[test]
    fn two_point_distance() {
        let spec = BoxSpec::new(1, 2, 16, 1.0, Variant::LongTime).unwrap();
        let data = build_adversarial(spec, 1.0, FrequencyLattice::new(1, 20).unwrap()).unwrap();
        let d = perturbation_distance(&data, -0.5).unwrap();
        assert!((d.exact - 2f64.sqrt() * 257f64.powf(-0.25)).abs() < 1e-15);
        assert!(perturbation_distance(&data, 0.0).is_err());
    }

    #[test]
    fn zero_sum_counts() {
        let s4 = build_sigma(3, 5, Variant::LongTime, 1);
        // (N, N, −2N) and permutations, and the mirror image
        assert_eq!(zero_sum_tuple_count(3, &s4), 6);
        let s2 = build_sigma(2, 5, Variant::LongTime, 1);
        assert_eq!(zero_sum_tuple_count(2, &s2), 2);
        assert_eq!(zero_sum_tuple_count(3, &s2), 0);
    }
}
