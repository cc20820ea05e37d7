use serde::{Deserialize, Serialize};

use crate::spectral_core::{bracket, Freq};
use crate::{Error, Result};

/// Two-sided check c₁·x ≤ y ≤ c₂·x used wherever an estimate holds up to constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Default for Bracket {
    fn default() -> Self {
        Self { lower: 0.1, upper: 10.0 }
    }
}

impl Bracket {
    pub fn contains_ratio(&self, ratio: f64) -> bool {
        ratio >= self.lower && ratio <= self.upper
    }

    /// max/min of a set of positive values, compared with upper/lower.
    pub fn spread_ok(&self, values: &[f64]) -> bool {
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        min > 0.0 && max / min <= self.upper / self.lower
    }
}

/// g_s(A): 1 for s < −d/2, (log⟨A⟩)^{1/2} at s = −d/2, A^{d/2+s} above.
pub fn g_s(s: f64, d: usize, a: f64) -> Result<f64> {
    if !(a >= 1.0) {
        return Err(Error::Domain(format!("g_s needs A ≥ 1, got {a}")));
    }
    let crit = -(d as f64) / 2.0;
    Ok(if (s - crit).abs() <= 1e-12 {
        bracket(a).ln().sqrt()
    } else if s < crit {
        1.0
    } else {
        a.powf(d as f64 / 2.0 + s)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// 0 < t ≪ 1/N
    Short,
    /// 1/N ≪ t ≲ 1
    Long,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundParams {
    pub d: usize,
    pub k: usize,
    pub s: f64,
    pub r: f64,
    pub a: f64,
    pub n: f64,
    pub t: f64,
    pub regime: Regime,
}

/// Predicted lower bound for ‖Ξ₁(φ)(t)‖_{H^s} with unit constant.
///
/// Short: Rᵏ t² A^{d(k−1)} g_s(A). Long: Rᵏ (t/N) A^{(k−1)d} min(g_s(A), g_s(1/t)).
pub fn lower_bound_predictions(p: &LowerBoundParams) -> Result<f64> {
    let base = p.r.powi(p.k as i32) * p.a.powf(((p.k - 1) * p.d) as f64);
    Ok(match p.regime {
        Regime::Short => base * p.t * p.t * g_s(p.s, p.d, p.a)?,
        Regime::Long => {
            if !(p.t > 0.0 && p.t <= 1.0) {
                return Err(Error::Regime(format!("long-time prediction needs 0 < t ≤ 1, got {}", p.t)));
            }
            base * p.t / p.n * g_s(p.s, p.d, p.a)?.min(g_s(p.s, p.d, 1.0 / p.t)?)
        }
    })
}

/// Lattice value of 1_{a+Q_A} ∗ 1_{b+Q_A} at ξ: the number of pairs
/// (q₁, q₂) ∈ (a+Q_A) × (b+Q_A) of lattice points with q₁ + q₂ = ξ.
pub fn conv_box_oracle(a: &Freq, b: &Freq, big_a: f64, xi: &Freq, d: usize) -> u64 {
    let w = (big_a / 8.0 + 1e-12).floor() as i64;
    (0..d)
        .map(|i| (2 * w + 1 - (xi[i] - a[i] - b[i]).abs()).max(0) as u64)
        .product::<u64>()
        * u64::from((d..3).all(|i| xi[i] == a[i] + b[i]))
}

/// Measured ‖Ξⱼ(t)‖_{H^s}: `levels[j][q]` at time `t[q]`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LevelNormSamples {
    pub t: Vec<f64>,
    pub levels: Vec<Vec<f64>>,
    /// Optional ‖Ξ₁(u₀ + φ) − Ξ₁(φ)‖_{H^s} at the same times.
    pub xi1_difference: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperBoundParams {
    pub d: usize,
    pub k: usize,
    pub s: f64,
    pub r: f64,
    pub a: f64,
    pub n: f64,
}

/// Smallest constant making one bound hold on all samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FittedConstant {
    pub bound: String,
    pub level: usize,
    /// max over samples of measured/bound; for the geometric bounds the j-th root.
    pub constant: f64,
}

fn ratio_max(measured: &[f64], bound: impl Fn(usize) -> f64) -> f64 {
    measured
        .iter()
        .enumerate()
        .map(|(q, &m)| {
            let b = bound(q);
            if m == 0.0 {
                0.0
            } else if b > 0.0 {
                m / b
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max)
}

/// Fits the constants in the iterate upper bounds.
///
/// Bounds (all with `t` the sample time, j the level):
/// - `short_geometric`: Cʲ t^{2j} (RA^d)^{(k−1)j} (1 + R g_s(A)), j ≥ 1
/// - `long_level0`: RN^sA^{d/2} + 1
/// - `long_level1`: (t/N) Σ_{m=1}^{k} R^m A^{md} + t²
/// - `long_level2`: (t/N)² Σ_{m=k+1}^{2k−1} R^m A^{md} + (t³/N) Σ_{m=1}^{k} R^m A^{md} + t⁴
/// - `long_geometric`: Cʲ t^{2j} (Σ_{m=1}^{(k−1)j+1} R^m A^{md} (tN)^{−m/k} + 1), j ≥ 1
/// - `xi1_difference`: (t/N) Σ_{m=1}^{k−1} R^m + t²
pub fn upper_bound_check(samples: &LevelNormSamples, p: &UpperBoundParams) -> Result<Vec<FittedConstant>> {
    for level in &samples.levels {
        if level.len() != samples.t.len() {
            return Err(Error::Domain("level norms and times differ in length".into()));
        }
    }
    let (k, d) = (p.k as i32, p.d as f64);
    let rad = p.r * p.a.powf(d);
    let gs = g_s(p.s, p.d, p.a)?;
    let t = &samples.t;
    let sum_pow = |lo: i32, hi: i32, scale: &dyn Fn(i32) -> f64| (lo..=hi).map(|m| rad.powi(m) * scale(m)).sum::<f64>();
    let mut out = Vec::new();
    for (j, measured) in samples.levels.iter().enumerate() {
        let ji = j as i32;
        if j >= 1 {
            let c = ratio_max(measured, |q| t[q].powi(2 * ji) * rad.powi((k - 1) * ji) * (1.0 + p.r * gs));
            out.push(FittedConstant { bound: "short_geometric".into(), level: j, constant: c.powf(1.0 / j as f64) });
            let c = ratio_max(measured, |q| {
                let tn = t[q] * p.n;
                t[q].powi(2 * ji) * (sum_pow(1, (k - 1) * ji + 1, &|m| tn.powf(-(m as f64) / k as f64)) + 1.0)
            });
            out.push(FittedConstant { bound: "long_geometric".into(), level: j, constant: c.powf(1.0 / j as f64) });
        }
        let level_bound = match j {
            0 => Some(ratio_max(measured, |_| p.r * p.n.powf(p.s) * p.a.powf(d / 2.0) + 1.0)),
            1 => Some(ratio_max(measured, |q| t[q] / p.n * sum_pow(1, k, &|_| 1.0) + t[q] * t[q])),
            2 => Some(ratio_max(measured, |q| {
                (t[q] / p.n).powi(2) * sum_pow(k + 1, 2 * k - 1, &|_| 1.0)
                    + t[q].powi(3) / p.n * sum_pow(1, k, &|_| 1.0)
                    + t[q].powi(4)
            })),
            _ => None,
        };
        if let Some(c) = level_bound {
            out.push(FittedConstant { bound: format!("long_level{j}"), level: j, constant: c });
        }
    }
    if let Some(diff) = &samples.xi1_difference {
        let c = ratio_max(diff, |q| t[q] / p.n * (1..k).map(|m| p.r.powi(m)).sum::<f64>() + t[q] * t[q]);
        out.push(FittedConstant { bound: "xi1_difference".into(), level: 1, constant: c });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_s_branches() {
        assert!((g_s(0.0, 1, 16.0).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(g_s(-2.0, 1, 100.0).unwrap(), 1.0);
        let a = (std::f64::consts::E.powi(2) - 1.0).sqrt();
        assert!((g_s(-0.5, 1, a).unwrap() - 1.0).abs() < 1e-14);
        assert!(g_s(0.0, 1, 0.5).is_err());
    }

    #[test]
    fn box_convolution_counts() {
        let z = [0, 0, 0];
        assert_eq!(conv_box_oracle(&z, &z, 16.0, &z, 1), 5);
        assert_eq!(conv_box_oracle(&z, &z, 16.0, &[5, 0, 0], 1), 0);
        // brute force in 2d
        let (a, b) = ([10i64, -3, 0], [-7i64, 2, 0]);
        let w = 3;
        for x in -2..=8 {
            for y in -8..=6 {
                let xi = [x, y, 0];
                let mut count = 0;
                for p in -w..=w {
                    for q in -w..=w {
                        let q1 = [a[0] + p, a[1] + q];
                        let q2 = [xi[0] - q1[0], xi[1] - q1[1]];
                        if (q2[0] - b[0]).abs() <= w && (q2[1] - b[1]).abs() <= w {
                            count += 1;
                        }
                    }
                }
                assert_eq!(conv_box_oracle(&a, &b, 8.0 * w as f64, &xi, 2), count);
            }
        }
    }

    #[test]
    fn prediction_scalings() {
        let base = LowerBoundParams { d: 1, k: 2, s: -0.75, r: 1.0, a: 16.0, n: 256.0, t: 1e-4, regime: Regime::Short };
        let p1 = lower_bound_predictions(&base).unwrap();
        let p2 = lower_bound_predictions(&LowerBoundParams { t: 2e-4, ..base }).unwrap();
        assert!((p2 / p1 - 4.0).abs() < 1e-12);
        let p3 = lower_bound_predictions(&LowerBoundParams { r: 2.0, ..base }).unwrap();
        assert!((p3 / p1 - 4.0).abs() < 1e-12);
        let long = LowerBoundParams { a: 1.0, t: 0.1, regime: Regime::Long, ..base };
        let l1 = lower_bound_predictions(&long).unwrap();
        let l2 = lower_bound_predictions(&LowerBoundParams { t: 0.2, ..long }).unwrap();
        assert!((l2 / l1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_data_gives_zero_constants() {
        let samples = LevelNormSamples { t: vec![0.1, 0.2], levels: vec![vec![0.0; 2]; 3], xi1_difference: None };
        let p = UpperBoundParams { d: 1, k: 2, s: -0.75, r: 0.0, a: 1.0, n: 64.0 };
        for c in upper_bound_check(&samples, &p).unwrap() {
            assert_eq!(c.constant, 0.0);
        }
    }
}
