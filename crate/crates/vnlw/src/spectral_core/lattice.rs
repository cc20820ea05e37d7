use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Integer frequency. Components past the lattice dimension are zero.
pub type Freq = [i64; 3];

/// The cube {ξ ∈ ℤ^d : ‖ξ‖_∞ ≤ M}, stored row-major with the first axis slowest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrequencyLattice {
    d: usize,
    m: usize,
}

impl FrequencyLattice {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::Domain(format!("dimension {d} not in 1..=3")));
        }
        if m == 0 {
            return Err(Error::Domain("cutoff M must be positive".into()));
        }
        Ok(Self { d, m })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn cutoff(&self) -> usize {
        self.m
    }

    /// Points per axis, 2M + 1.
    pub fn side(&self) -> usize {
        2 * self.m + 1
    }

    pub fn len(&self) -> usize {
        self.side().pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, xi: &Freq) -> bool {
        let m = self.m as i64;
        xi[..self.d].iter().all(|c| c.abs() <= m) && xi[self.d..].iter().all(|&c| c == 0)
    }

    pub fn index_of(&self, xi: &Freq) -> Option<usize> {
        if !self.contains(xi) {
            return None;
        }
        let side = self.side();
        let m = self.m as i64;
        Some(xi[..self.d].iter().fold(0, |acc, &c| acc * side + (c + m) as usize))
    }

    pub fn freq(&self, mut index: usize) -> Freq {
        let side = self.side();
        let m = self.m as i64;
        let mut out = [0i64; 3];
        for axis in (0..self.d).rev() {
            out[axis] = (index % side) as i64 - m;
            index /= side;
        }
        out
    }

    pub fn zero_index(&self) -> usize {
        self.len() / 2
    }

    /// Index of −ξ for the point at `index`; the layout makes this `len − 1 − index`.
    #[inline]
    pub fn negate_index(&self, index: usize) -> usize {
        self.len() - 1 - index
    }

    pub fn iter(&self) -> impl Iterator<Item = Freq> + '_ {
        (0..self.len()).map(move |i| self.freq(i))
    }

    /// Euclidean |ξ| for every lattice point, in storage order.
    pub fn abs_values(&self) -> Vec<f64> {
        self.iter().map(|xi| abs(&xi)).collect()
    }
}

pub fn abs(xi: &Freq) -> f64 {
    let s: i64 = xi.iter().map(|c| c * c).sum();
    (s as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_round_trips() {
        for d in 1..=3 {
            let lat = FrequencyLattice::new(d, 3).unwrap();
            assert_eq!(lat.len(), 7usize.pow(d as u32));
            for i in 0..lat.len() {
                let xi = lat.freq(i);
                assert_eq!(lat.index_of(&xi), Some(i));
                let neg = [-xi[0], -xi[1], -xi[2]];
                assert_eq!(lat.index_of(&neg), Some(lat.negate_index(i)));
            }
            assert_eq!(lat.freq(lat.zero_index()), [0, 0, 0]);
        }
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(FrequencyLattice::new(0, 2).is_err());
        assert!(FrequencyLattice::new(4, 2).is_err());
        assert!(FrequencyLattice::new(1, 0).is_err());
    }
}
