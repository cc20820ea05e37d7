use serde::{Deserialize, Serialize};

use super::field::SpectralField;
use super::norms::{hs_norm, norm, SobolevIndex};
use crate::{Error, Result};

/// The two parts of the X(T) = C_T H^s ∩ Y(T) norm evaluated on samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XtNorms {
    /// sup_{0≤t≤T} ‖u(t)‖_{H^s}
    pub sup_hs: f64,
    /// sup_{0<t≤T} t^{−s+d(1/2−1/k)} ‖u(t)‖_{Ḣ^{d(1/2−1/k)}}
    pub y: f64,
}

impl XtNorms {
    pub fn total(&self) -> f64 {
        self.sup_hs + self.y
    }
}

/// X(T) norms of a sampled trajectory; samples with t > T are ignored.
pub fn xt_norm<'a>(
    samples: impl IntoIterator<Item = (f64, &'a SpectralField)>,
    t_max: f64,
    s: f64,
    k: usize,
) -> Result<XtNorms> {
    let mut out = XtNorms { sup_hs: 0.0, y: 0.0 };
    let mut seen = false;
    for (t, f) in samples {
        if t > t_max * (1.0 + 1e-14) || t < 0.0 {
            continue;
        }
        seen = true;
        let d = f.lattice().dim() as f64;
        let reg = d * (0.5 - 1.0 / k as f64);
        out.sup_hs = out.sup_hs.max(hs_norm(f, s));
        if t > 0.0 {
            let weight = t.powf(-s + reg);
            out.y = out.y.max(weight * norm(f, SobolevIndex::Homogeneous(reg))?);
        }
    }
    if !seen {
        return Err(Error::Domain("empty trajectory".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::FrequencyLattice;
    use num_complex::Complex64;

    #[test]
    fn zero_and_single_sample() {
        let lat = FrequencyLattice::new(1, 4).unwrap();
        let z = SpectralField::zeros(lat);
        let r = xt_norm([(0.1, &z), (0.2, &z)], 0.2, -0.25, 3).unwrap();
        assert_eq!((r.sup_hs, r.y), (0.0, 0.0));
        let f = SpectralField::from_modes(lat, &[([2, 0, 0], Complex64::new(3.0, 0.0))]).unwrap();
        let r = xt_norm([(0.5, &f)], 1.0, -0.25, 3).unwrap();
        let reg = 0.5 - 1.0 / 3.0;
        let expect = 0.5f64.powf(0.25 + reg) * 3.0 * 2f64.powf(reg);
        assert!((r.y - expect).abs() < 1e-14);
        assert!(xt_norm(std::iter::empty(), 1.0, 0.0, 2).is_err());
    }
}
