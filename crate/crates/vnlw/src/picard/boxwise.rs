//! Ξ₁ of box data without a global lattice.
//!
//! For φ̂ = R·1_Ω with Ω a union of boxes around the centres η ∈ Σ, the
//! product of k linear flows splits into blocks around the sums η₁+⋯+η_k.
//! Each block is a small convolution, so the cost depends on the box width
//! and not on N.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::gauss_legendre;
use crate::data_factory::BoxSpec;
use crate::spectral_core::{bracket, multiplier_by_abs, Freq, FrequencyLattice, Multiplier, ProductEngine, SpectralField};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxwiseOptions {
    /// Gauss–Legendre points per panel.
    pub order: usize,
    /// Panel growth away from both ends of [0, t].
    pub ratio: f64,
    /// Accept when halving every panel changes no coefficient by more than tol·max.
    pub tol: f64,
    pub max_refinements: usize,
}

impl Default for BoxwiseOptions {
    fn default() -> Self {
        Self { order: 10, ratio: 1.25, tol: 1e-8, max_refinements: 4 }
    }
}

/// Field stored as disjoint blocks: value at `center + ζ` is `field[ζ]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockField {
    pub blocks: Vec<(Freq, SpectralField)>,
}

impl BlockField {
    fn entries(&self) -> impl Iterator<Item = (Freq, Complex64)> + '_ {
        self.blocks.iter().flat_map(|(c, f)| {
            f.lattice().iter().zip(f.coeffs()).map(move |(z, v)| ([c[0] + z[0], c[1] + z[1], c[2] + z[2]], *v))
        })
    }

    pub fn hs_norm(&self, s: f64) -> f64 {
        self.entries()
            .map(|(x, v)| {
                let a = ((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) as f64).sqrt();
                bracket(a).powf(2.0 * s) * v.norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn get(&self, xi: &Freq) -> Complex64 {
        for (c, f) in &self.blocks {
            if let Some(v) = f.get(&[xi[0] - c[0], xi[1] - c[1], xi[2] - c[2]]) {
                return v;
            }
        }
        Complex64::new(0.0, 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(|(_, f)| f.max_abs()).fold(0.0, f64::max)
    }

    /// Scatter onto a global lattice, which must hold every block.
    pub fn to_field(&self, lattice: FrequencyLattice) -> Result<SpectralField> {
        let mut out = SpectralField::zeros(lattice);
        for (x, v) in self.entries() {
            if v != Complex64::new(0.0, 0.0) {
                let i = lattice
                    .index_of(&x)
                    .ok_or_else(|| Error::Config(format!("block entry {x:?} outside lattice cutoff {}", lattice.cutoff())))?;
                out.coeffs_mut()[i] += v;
            }
        }
        Ok(out)
    }

    fn max_diff(&self, other: &Self) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .flat_map(|((_, a), (_, b))| a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }
}

/// Panel edges on [0, t], geometric away from both ends.
fn graded_edges(t: f64, first: f64, ratio: f64) -> Vec<f64> {
    let half = 0.5 * t;
    let mut left = vec![0.0];
    let mut w = first.min(half);
    let cap = t / 16.0;
    while *left.last().unwrap() + w < half {
        left.push(left.last().unwrap() + w);
        w = (w * ratio).min(cap);
    }
    let mut edges = left.clone();
    edges.push(half);
    edges.extend(left.iter().rev().map(|x| t - x));
    edges
}

struct Setup {
    k: usize,
    r: f64,
    box_offsets: Vec<Freq>,
    sigma: Vec<Freq>,
    /// centre → (multiset of Σ indices, ordering count)
    groups: Vec<(Freq, Vec<(Vec<usize>, f64)>)>,
    engine: ProductEngine,
    /// |c + ζ| per block and local index
    out_abs: Vec<Vec<f64>>,
}

fn multisets_of(n: usize, k: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(min: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in min..n {
            cur.push(i);
            rec(i, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut raw);
    let fact = |m: usize| (1..=m).map(|x| x as f64).product::<f64>();
    raw.into_iter()
        .map(|m| {
            let mut mult = fact(k);
            let mut i = 0;
            while i < m.len() {
                let run = m[i..].iter().take_while(|&&x| x == m[i]).count();
                mult /= fact(run);
                i += run;
            }
            (m, mult)
        })
        .collect()
}

/// Accumulates −Σ w_q W(t − t_q) F_c(t_q) over the Gauss points of `edges`.
fn quadrature(setup: &Setup, t: f64, edges: &[f64], order: usize) -> Result<BlockField> {
    let (x, w) = gauss_legendre(order);
    let points: Vec<(f64, f64)> = edges
        .windows(2)
        .flat_map(|e| {
            let (a, b) = (e[0], e[1]);
            x.iter().zip(&w).map(move |(x, w)| (0.5 * (a + b) + 0.5 * (b - a) * x, 0.5 * (b - a) * w)).collect::<Vec<_>>()
        })
        .collect();
    let lattice = *setup.engine.lattice();
    // chunks keep the reduction order fixed regardless of threads
    let partials: Vec<Vec<Vec<Complex64>>> = points
        .par_chunks(64)
        .map(|chunk| -> Result<Vec<Vec<Complex64>>> {
            let mut acc = vec![vec![Complex64::new(0.0, 0.0); lattice.len()]; setup.groups.len()];
            for &(tp, wq) in chunk {
                let phys = setup
                    .sigma
                    .iter()
                    .map(|eta| {
                        let mut f = SpectralField::zeros(lattice);
                        for z in &setup.box_offsets {
                            let xi = [eta[0] + z[0], eta[1] + z[1], eta[2] + z[2]];
                            let a = ((xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) as f64).sqrt();
                            let v = setup.r
                                * multiplier_by_abs(Multiplier::P, tp, a)
                                * multiplier_by_abs(Multiplier::V0, tp, a);
                            f.set(z, Complex64::new(v, 0.0))?;
                        }
                        setup.engine.to_physical(&f)
                    })
                    .collect::<Result<Vec<_>>>()?;
                for (g, (_, sets)) in setup.groups.iter().enumerate() {
                    let mut prod = vec![Complex64::new(0.0, 0.0); phys[0].len()];
                    for (m, mult) in sets {
                        for (i, slot) in prod.iter_mut().enumerate() {
                            let mut p = Complex64::new(*mult, 0.0);
                            for &e in m {
                                p *= phys[e][i];
                            }
                            *slot += p;
                        }
                    }
                    let f = setup.engine.from_physical(prod);
                    for ((slot, c), &a) in acc[g].iter_mut().zip(f.coeffs()).zip(&setup.out_abs[g]) {
                        *slot -= wq * multiplier_by_abs(Multiplier::W, t - tp, a) * c;
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = vec![vec![Complex64::new(0.0, 0.0); lattice.len()]; setup.groups.len()];
    for part in partials {
        for (tg, pg) in total.iter_mut().zip(part) {
            for (a, b) in tg.iter_mut().zip(pg) {
                *a += b;
            }
        }
    }
    let blocks = setup
        .groups
        .iter()
        .zip(total)
        .map(|((c, _), coeffs)| Ok((*c, SpectralField::from_coeffs(lattice, coeffs)?)))
        .collect::<Result<_>>()?;
    Ok(BlockField { blocks })
}

/// Ξ₁(φ, 0)(t) for φ̂ = R·1_Ω, block by block, by graded Gauss–Legendre in t′.
pub fn xi1_boxwise(spec: &BoxSpec, r: f64, t: f64, opts: &BoxwiseOptions) -> Result<BlockField> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("negative time {t}")));
    }
    let k = spec.k;
    let d = spec.d;
    let w = spec.half_width().max(0) as usize;
    let sigma = spec.sigma();
    let spacing = spec.n as usize;
    if 2 * k * w >= spacing {
        return Err(Error::Config(format!("output blocks of radius {} overlap at spacing N = {spacing}", k * w)));
    }
    let lattice = FrequencyLattice::new(d, (k * w).max(1))?;
    let engine = ProductEngine::with_input_radius(lattice, k, w)?;
    let mut by_center: BTreeMap<Freq, Vec<(Vec<usize>, f64)>> = BTreeMap::new();
    for (m, mult) in multisets_of(sigma.len(), k) {
        let mut c = [0i64; 3];
        for &i in &m {
            for a in 0..3 {
                c[a] += sigma[i][a];
            }
        }
        by_center.entry(c).or_default().push((m, mult));
    }
    let groups: Vec<_> = by_center.into_iter().collect();
    let out_abs = groups
        .iter()
        .map(|(c, _)| {
            lattice
                .iter()
                .map(|z| {
                    let x = [c[0] + z[0], c[1] + z[1], c[2] + z[2]];
                    ((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) as f64).sqrt()
                })
                .collect()
        })
        .collect();
    let box_offsets = crate::data_factory::box_offsets(d, w as i64);
    let setup = Setup { k, r, box_offsets, sigma, groups, engine, out_abs };
    if t == 0.0 || r == 0.0 {
        let blocks = setup.groups.iter().map(|(c, _)| (*c, SpectralField::zeros(lattice))).collect();
        return Ok(BlockField { blocks });
    }
    let far = sigma_far(&setup) + w as f64 * (d as f64).sqrt();
    let first = 0.1 / (setup.k as f64 * far.max(1.0));
    let mut edges = graded_edges(t, first, opts.ratio);
    let mut prev = quadrature(&setup, t, &edges, opts.order)?;
    let mut achieved = f64::INFINITY;
    for _ in 0..opts.max_refinements {
        edges = edges.windows(2).flat_map(|e| [e[0], 0.5 * (e[0] + e[1])]).chain([t]).collect();
        let next = quadrature(&setup, t, &edges, opts.order)?;
        let scale = next.max_abs();
        achieved = if scale == 0.0 { 0.0 } else { next.max_diff(&prev) / scale };
        if achieved <= opts.tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Accuracy { message: "boxwise time quadrature did not settle".into(), achieved })
}

fn sigma_far(setup: &Setup) -> f64 {
    setup
        .sigma
        .iter()
        .map(|e| ((e[0] * e[0] + e[1] * e[1] + e[2] * e[2]) as f64).sqrt())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data_factory::{build_adversarial, Variant};
    use crate::estimates::xi1_closed_form_field;
    use crate::spectral_core::hs_norm;

    #[test]
    fn matches_closed_form_in_one_dimension() {
        for k in [2, 3] {
            let spec = BoxSpec::new(1, k, 64, 16.0, Variant::LongTime).unwrap();
            let lat = FrequencyLattice::new(1, k * (2 * 64 + 2)).unwrap();
            let data = build_adversarial(spec, 1.3, lat).unwrap();
            let exact = xi1_closed_form_field(&data, 0.07, lat).unwrap();
            let blocks = xi1_boxwise(&spec, 1.3, 0.07, &BoxwiseOptions::default()).unwrap();
            let err = blocks.to_field(lat).unwrap().relative_error(&exact).unwrap();
            assert!(err < 1e-8, "k = {k}: {err}");
            assert!((blocks.hs_norm(-0.75) / hs_norm(&exact, -0.75) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn matches_closed_form_in_two_dimensions() {
        let spec = BoxSpec::new(2, 3, 16, 16.0, Variant::LongTime).unwrap();
        let lat = FrequencyLattice::new(2, 3 * 34).unwrap();
        let data = build_adversarial(spec, 1.0, lat).unwrap();
        let exact = xi1_closed_form_field(&data, 0.2, lat).unwrap();
        let blocks = xi1_boxwise(&spec, 1.0, 0.2, &BoxwiseOptions::default()).unwrap();
        assert!((blocks.hs_norm(-0.9) / hs_norm(&exact, -0.9) - 1.0).abs() < 1e-8);
    }
}
