//! Exact-in-the-linear-part integration of I'' + rI' + r²I = −F on a time grid.
//!
//! On each panel the forcing is replaced by its degree n−1 interpolant through
//! the Lobatto nodes; the damped oscillator is then integrated exactly against
//! each monomial with the φ-functions. The only error is the interpolation
//! error of the forcing, independent of how stiff |ξ| is.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::TimeGrid;
use crate::estimates::phi_functions;
use crate::spectral_core::{multiplier_by_abs, Multiplier, SpectralField, SQRT3_2};
use crate::{Error, Result};

/// Inverse of the monomial Vandermonde matrix V[i][m] = θᵢ^m.
fn vandermonde_inverse(theta: &[f64]) -> Vec<Vec<f64>> {
    let n = theta.len();
    let mut a: Vec<Vec<f64>> = theta.iter().map(|&x| (0..n).map(|m| x.powi(m as i32)).collect()).collect();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect()).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for row in 0..n {
            if row != col {
                let f = a[row][col];
                if f != 0.0 {
                    for j in 0..n {
                        a[row][j] -= f * a[col][j];
                        inv[row][j] -= f * inv[col][j];
                    }
                }
            }
        }
    }
    inv
}

/// Propagation weights for one |ξ| on one panel of width h.
struct PanelWeights {
    /// value at node i: hom_u[i]·I_a + hom_v[i]·I'_a + Σ_j value[i][j] F_j
    hom_u: Vec<f64>,
    hom_v: Vec<f64>,
    value: Vec<Vec<f64>>,
    /// derivative at the panel end
    end_u: f64,
    end_v: f64,
    end: Vec<f64>,
}

fn panel_weights(r: f64, h: f64, theta: &[f64], vinv: &[Vec<f64>]) -> PanelWeights {
    let n = theta.len();
    let beta = SQRT3_2 * r;
    let lambda = Complex64::new(-0.5 * r, beta);
    let mut g = vec![vec![0.0; n]; n];
    let mut g_end = vec![0.0; n];
    for (i, &th) in theta.iter().enumerate() {
        if r == 0.0 {
            for m in 0..n {
                g[i][m] = -h * h * th.powi(m as i32 + 2) / ((m + 1) * (m + 2)) as f64;
                if i == n - 1 {
                    g_end[m] = -h * th.powi(m as i32 + 1) / (m + 1) as f64;
                }
            }
            continue;
        }
        let phis = phi_functions(lambda * (h * th), n);
        let mut fact = 1.0;
        for m in 0..n {
            if m > 0 {
                fact *= m as f64;
            }
            let scale = -h / beta * fact * th.powi(m as i32 + 1);
            g[i][m] = scale * phis[m + 1].im;
            if i == n - 1 {
                g_end[m] = scale * (lambda * phis[m + 1]).im;
            }
        }
    }
    let value = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|m| g[i][m] * vinv[m][j]).sum()).collect())
        .collect();
    let end = (0..n).map(|j| (0..n).map(|m| g_end[m] * vinv[m][j]).sum()).collect();
    let mut hom_u = vec![0.0; n];
    let mut hom_v = vec![0.0; n];
    for (i, &th) in theta.iter().enumerate() {
        let tau = h * th;
        let p = multiplier_by_abs(Multiplier::P, tau, r);
        hom_u[i] = p * multiplier_by_abs(Multiplier::V0, tau, r);
        hom_v[i] = p * multiplier_by_abs(Multiplier::V1, tau, r);
    }
    let p = multiplier_by_abs(Multiplier::P, h, r);
    let v1 = multiplier_by_abs(Multiplier::V1, h, r);
    let c = (beta * h).cos();
    PanelWeights {
        hom_u,
        hom_v,
        value,
        end_u: -p * r * r * v1,
        end_v: p * (c - 0.5 * r * v1),
        end,
    }
}

/// I(t) = −∫₀ᵗ W(t − t′) F(t′) dt′ at every grid node, from F at every node.
pub fn duhamel_on_grid(grid: &TimeGrid, forcing: &[SpectralField]) -> Result<Vec<SpectralField>> {
    if forcing.len() != grid.len() {
        return Err(Error::Config(format!("{} forcing samples for {} grid nodes", forcing.len(), grid.len())));
    }
    let lattice = *forcing[0].lattice();
    for f in forcing {
        f.check_same_lattice(&forcing[0])?;
    }
    // modes sharing |ξ|² share every weight
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, xi) in lattice.iter().enumerate() {
        groups.entry(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).or_default().push(i);
    }
    let groups: Vec<(i64, Vec<usize>)> = groups.into_iter().collect();
    let theta = grid.theta();
    let n = theta.len();
    let vinv = vandermonde_inverse(theta);
    let edges = grid.edges();
    let q_total = grid.len();

    let per_group: Vec<Vec<Vec<Complex64>>> = groups
        .par_iter()
        .map(|(norm2, modes)| {
            let r = (*norm2 as f64).sqrt();
            let mut out = vec![vec![Complex64::new(0.0, 0.0); q_total]; modes.len()];
            let mut u = vec![Complex64::new(0.0, 0.0); modes.len()];
            let mut v = u.clone();
            let mut f = vec![Complex64::new(0.0, 0.0); n];
            for p in 0..grid.panels() {
                let w = panel_weights(r, edges[p + 1] - edges[p], theta, &vinv);
                for (slot, &mode) in modes.iter().enumerate() {
                    for (j, fj) in f.iter_mut().enumerate() {
                        *fj = forcing[grid.node(p, j)].coeffs()[mode];
                    }
                    for i in 1..n {
                        let mut val = u[slot] * w.hom_u[i] + v[slot] * w.hom_v[i];
                        for j in 0..n {
                            val += f[j] * w.value[i][j];
                        }
                        out[slot][grid.node(p, i)] = val;
                    }
                    let mut dv = u[slot] * w.end_u + v[slot] * w.end_v;
                    for j in 0..n {
                        dv += f[j] * w.end[j];
                    }
                    u[slot] = out[slot][grid.node(p, n - 1)];
                    v[slot] = dv;
                }
            }
            out
        })
        .collect();

    let mut result = vec![vec![Complex64::new(0.0, 0.0); lattice.len()]; q_total];
    for ((_, modes), values) in groups.iter().zip(per_group) {
        for (&mode, series) in modes.iter().zip(values) {
            for (q, val) in series.into_iter().enumerate() {
                result[q][mode] = val;
            }
        }
    }
    result.into_iter().map(|c| SpectralField::from_coeffs(lattice, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::GridSpec;
    use crate::spectral_core::FrequencyLattice;

    fn oracle(r: f64, t: f64, f: impl Fn(f64) -> f64) -> f64 {
        // fine composite Simpson of −W(t−s)F(s)
        let m = 20000;
        let h = t / m as f64;
        (0..=m)
            .map(|i| {
                let s = i as f64 * h;
                let w = if i == 0 || i == m { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                -w * multiplier_by_abs(Multiplier::W, t - s, r) * f(s)
            })
            .sum::<f64>()
            * h
            / 3.0
    }

    #[test]
    fn polynomial_forcing_is_exact() {
        let lat = FrequencyLattice::new(1, 3).unwrap();
        let grid = GridSpec::graded(0.05, 1.5, 0.3).build(1.2).unwrap();
        let f = |t: f64| 1.0 + t - 2.0 * t.powi(3);
        let forcing: Vec<_> = grid
            .times()
            .iter()
            .map(|&t| SpectralField::from_coeffs(lat, vec![Complex64::new(f(t), 0.0); 7]).unwrap())
            .collect();
        let out = duhamel_on_grid(&grid, &forcing).unwrap();
        let q = grid.len() - 1;
        for (i, xi) in lat.iter().enumerate() {
            let r = (xi[0].abs()) as f64;
            let expect = oracle(r, 1.2, f);
            assert!((out[q].coeffs()[i].re - expect).abs() < 1e-11, "ξ = {xi:?}");
        }
    }

    #[test]
    fn oscillatory_forcing_converges() {
        let lat = FrequencyLattice::new(1, 40).unwrap();
        let grid = GridSpec::graded(0.002, 1.2, 0.02).build(0.5).unwrap();
        let f = |t: f64| (-20.0 * t).exp() * (30.0 * t).cos();
        let forcing: Vec<_> = grid
            .times()
            .iter()
            .map(|&t| SpectralField::from_coeffs(lat, vec![Complex64::new(f(t), 0.0); 81]).unwrap())
            .collect();
        let out = duhamel_on_grid(&grid, &forcing).unwrap();
        let q = grid.len() - 1;
        for xi in [0i64, 1, 17, 40] {
            let i = lat.index_of(&[xi, 0, 0]).unwrap();
            let expect = oracle(xi as f64, 0.5, f);
            assert!((out[q].coeffs()[i].re - expect).abs() < 1e-10, "ξ = {xi}");
        }
    }
}
