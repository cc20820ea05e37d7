use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::phase::sign_patterns;
use super::time_integral::{exact_time_integral, exact_time_moment};
use crate::data_factory::AdversarialData;
use crate::spectral_core::{Freq, FrequencyLattice, SpectralField, SQRT3_2};
use crate::{Error, Result};

/// Refusal threshold for tuple enumeration in the closed form.
pub const MAX_CLOSED_FORM_TUPLES: u64 = 1_000_000;

fn norm(x: &Freq) -> f64 {
    ((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) as f64).sqrt()
}

/// Σ_ε ∫₀ᵗ e^{Φt′/2} V1(t−t′, ξ) cos((√3/2)Ψt′ − Sπ/6) dt′ for one tuple.
fn tuple_integral(nx: f64, nj: &[f64], t: f64, patterns: &[Vec<i8>]) -> f64 {
    let phi: f64 = nx - nj.iter().sum::<f64>();
    let a = 0.5 * phi;
    let beta = SQRT3_2 * nx;
    let mut total = 0.0;
    for eps in patterns {
        let psi: f64 = nj.iter().zip(eps).map(|(n, &e)| e as f64 * n).sum();
        let s: i32 = eps.iter().map(|&e| e as i32).sum();
        let gamma = SQRT3_2 * psi;
        let c = s as f64 * PI / 6.0;
        total += if beta > 0.0 {
            // sin(β(t−t′))cos(γt′−c) split into two cosines
            0.5 * (exact_time_integral(a, gamma - beta, beta * t - c - PI / 2.0, t)
                + exact_time_integral(a, -(gamma + beta), beta * t + c - PI / 2.0, t))
                / beta
        } else {
            t * exact_time_integral(a, gamma, -c, t) - exact_time_moment(a, gamma, -c, t)
        };
    }
    total
}

fn prefactor(data: &AdversarialData, nx: f64, t: f64) -> f64 {
    let k = data.spec.k as i32;
    -data.r.powi(k) / 3f64.powf(k as f64 / 2.0) * (-0.5 * nx * t).exp()
}

/// Fourier coefficient of Ξ₁(φ, 0)(t) at ξ, summed exactly over tuples
/// (ξ₁, …, ξ_k) in the support with Σξⱼ = ξ.
pub fn xi1_closed_form(data: &AdversarialData, t: f64, xi: &Freq) -> Result<Complex64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("negative time {t}")));
    }
    let k = data.spec.k;
    let support = data.support();
    let work = (support.len() as u64).saturating_pow((k - 1) as u32);
    if work > MAX_CLOSED_FORM_TUPLES {
        return Err(Error::Config(format!(
            "closed form would enumerate {work} tuples (limit {MAX_CLOSED_FORM_TUPLES}); use a smaller A"
        )));
    }
    if t == 0.0 || data.r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let position: HashMap<Freq, usize> = support.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let norms: Vec<f64> = support.iter().map(norm).collect();
    let patterns = sign_patterns(k);
    let nx = norm(xi);
    let mut idx = vec![0usize; k - 1];
    let mut total = 0.0;
    let mut nj = vec![0.0; k];
    loop {
        let mut rest = *xi;
        for (slot, &i) in idx.iter().enumerate() {
            for a in 0..3 {
                rest[a] -= support[i][a];
            }
            nj[slot] = norms[i];
        }
        if let Some(&last) = position.get(&rest) {
            nj[k - 1] = norms[last];
            total += tuple_integral(nx, &nj, t, &patterns);
        }
        let mut j = 0;
        while j < k - 1 {
            idx[j] += 1;
            if idx[j] < support.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == k - 1 {
            break;
        }
    }
    Ok(Complex64::new(prefactor(data, nx, t) * total, 0.0))
}

/// Ξ₁(φ, 0)(t) on `lattice` from the closed form, enumerating all k-tuples once.
pub fn xi1_closed_form_field(data: &AdversarialData, t: f64, lattice: FrequencyLattice) -> Result<SpectralField> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("negative time {t}")));
    }
    let k = data.spec.k;
    let support = data.support();
    let tuples = (support.len() as u64).saturating_pow(k as u32);
    if tuples > MAX_CLOSED_FORM_TUPLES {
        return Err(Error::Config(format!(
            "closed form would enumerate {tuples} tuples (limit {MAX_CLOSED_FORM_TUPLES}); use a smaller A"
        )));
    }
    let far = support.iter().map(|f| f.iter().map(|c| c.abs()).max().unwrap_or(0)).max().unwrap_or(0);
    if (lattice.cutoff() as i64) < k as i64 * far {
        return Err(Error::Config(format!(
            "lattice cutoff {} does not cover {}-fold sums of the support",
            lattice.cutoff(),
            k
        )));
    }
    let mut out = SpectralField::zeros(lattice);
    if t == 0.0 || data.r == 0.0 {
        return Ok(out);
    }
    let norms: Vec<f64> = support.iter().map(norm).collect();
    let patterns = sign_patterns(k);
    let n = support.len();
    let rest_count = n.pow((k - 1) as u32);
    // Each first index yields its contributions in a fixed order; merging in
    // index order keeps the sum independent of the thread count.
    let parts: Vec<Vec<(usize, f64)>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut local = Vec::with_capacity(rest_count);
            let mut nj = vec![0.0; k];
            for mut code in 0..rest_count {
                let mut sum = support[first];
                nj[0] = norms[first];
                for slot in 1..k {
                    let i = code % n;
                    code /= n;
                    for a in 0..3 {
                        sum[a] += support[i][a];
                    }
                    nj[slot] = norms[i];
                }
                let index = lattice.index_of(&sum).expect("cutoff checked");
                let nx = norm(&sum);
                local.push((index, prefactor(data, nx, t) * tuple_integral(nx, &nj, t, &patterns)));
            }
            local
        })
        .collect();
    let coeffs = out.coeffs_mut();
    for part in parts {
        for (i, v) in part {
            coeffs[i].re += v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data_factory::{build_adversarial, BoxSpec, Variant};

    fn data(k: usize, n: u64, a: f64, r: f64) -> AdversarialData {
        let spec = BoxSpec::new(1, k, n, a, Variant::LongTime).unwrap();
        let m = k * (2 * n as usize + a as usize);
        build_adversarial(spec, r, FrequencyLattice::new(1, m).unwrap()).unwrap()
    }

    #[test]
    fn vanishes_at_time_zero() {
        let d = data(2, 16, 1.0, 1.0);
        assert_eq!(xi1_closed_form(&d, 0.0, &[0, 0, 0]).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn homogeneous_in_amplitude() {
        let a = xi1_closed_form(&data(3, 16, 16.0, 1.0), 0.3, &[16, 0, 0]).unwrap();
        let b = xi1_closed_form(&data(3, 16, 16.0, 2.0), 0.3, &[16, 0, 0]).unwrap();
        assert!((b.re - 8.0 * a.re).abs() <= 1e-14 * b.re.abs());
    }

    #[test]
    fn pointwise_agrees_with_field() {
        let d = data(3, 16, 16.0, 1.0);
        let lat = FrequencyLattice::new(1, 3 * 34).unwrap();
        let f = xi1_closed_form_field(&d, 0.2, lat).unwrap();
        for xi in [[0i64, 0, 0], [16, 0, 0], [-50, 0, 0], [98, 0, 0]] {
            let p = xi1_closed_form(&d, 0.2, &xi).unwrap();
            assert!((f.get(&xi).unwrap() - p).norm() <= 1e-13 * (1.0 + p.norm()));
        }
        assert!(f.conjugate_symmetry_defect() < 1e-15);
    }
}
