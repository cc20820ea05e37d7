use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Regularity thresholds for given (d, k), kept as exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub d: usize,
    pub k: usize,
    /// d/2 − 2/(k−1)
    pub s_scal: Ratio<i64>,
    /// d(1/2 − 1/k) − 1/k
    pub s_vis: Ratio<i64>,
    /// max(s_scal, −1/k)
    pub s_m: Ratio<i64>,
}

#[derive(Serialize, Deserialize)]
struct ThresholdsJson {
    d: usize,
    k: usize,
    s_scal: String,
    s_vis: String,
    s_m: String,
    s_scal_value: f64,
    s_vis_value: f64,
    s_m_value: f64,
}

pub(crate) fn to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Thresholds {
    pub fn s_scal_f64(&self) -> f64 {
        to_f64(self.s_scal)
    }

    pub fn s_vis_f64(&self) -> f64 {
        to_f64(self.s_vis)
    }

    pub fn s_m_f64(&self) -> f64 {
        to_f64(self.s_m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ThresholdsJson {
            d: self.d,
            k: self.k,
            s_scal: self.s_scal.to_string(),
            s_vis: self.s_vis.to_string(),
            s_m: self.s_m.to_string(),
            s_scal_value: self.s_scal_f64(),
            s_vis_value: self.s_vis_f64(),
            s_m_value: self.s_m_f64(),
        })
        .expect("plain struct")
    }
}

pub fn thresholds(d: usize, k: usize) -> Result<Thresholds> {
    if d < 1 || k < 2 {
        return Err(Error::Domain(format!("thresholds need d ≥ 1 and k ≥ 2, got d = {d}, k = {k}")));
    }
    let (di, ki) = (d as i64, k as i64);
    let s_scal = Ratio::new(di, 2) - Ratio::new(2, ki - 1);
    let s_vis = Ratio::new(di * (ki - 2), 2 * ki) - Ratio::new(1, ki);
    let s_m = s_scal.max(Ratio::new(-1, ki));
    Ok(Thresholds { d, k, s_scal, s_vis, s_m })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulated_values() {
        let t = thresholds(2, 3).unwrap();
        assert_eq!(t.s_scal, Ratio::from_integer(0));
        let t = thresholds(1, 2).unwrap();
        assert_eq!((t.s_vis, t.s_scal, t.s_m), (Ratio::new(-1, 2), Ratio::new(-3, 2), Ratio::new(-1, 2)));
        assert_eq!(thresholds(1, 3).unwrap().s_vis, Ratio::new(-1, 6));
        assert!(thresholds(1, 1).is_err());
    }

    #[test]
    fn viscous_above_scaling_exactly_when_expected() {
        for d in 1..=4 {
            for k in 2..=8 {
                let t = thresholds(d, k).unwrap();
                assert_eq!(t.s_vis > t.s_scal, d == 1 || (d == 2 && k == 2), "d={d} k={k}");
            }
        }
    }
}
