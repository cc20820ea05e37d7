use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::gauss_legendre;
use super::trajectory::FieldTrajectory;
use crate::spectral_core::{multiplier_by_abs, Multiplier, ProductEngine, SpectralField};
use crate::{Error, Result};

/// Composite Gauss–Legendre settings for a single Duhamel integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub order: usize,
    pub initial_panels: usize,
    pub max_panels: usize,
    /// Accept once two successive panel doublings differ by at most this (max-abs, relative).
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { order: 8, initial_panels: 4, max_panels: 4096, tol: 1e-10 }
    }
}

fn composite(
    args: &[&dyn FieldTrajectory],
    engine: &ProductEngine,
    abs: &[f64],
    t: f64,
    panels: usize,
    nodes: &[f64],
    weights: &[f64],
) -> Result<SpectralField> {
    let h = t / panels as f64;
    let points: Vec<(f64, f64)> = (0..panels)
        .flat_map(|p| {
            nodes.iter().zip(weights).map(move |(x, w)| (h * (p as f64 + 0.5 * (x + 1.0)), 0.5 * h * w))
        })
        .collect();
    let terms: Vec<Vec<Complex64>> = points
        .par_iter()
        .map(|&(tp, w)| -> Result<Vec<Complex64>> {
            let fields = args.iter().map(|a| a.at(tp)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&SpectralField> = fields.iter().collect();
            let prod = engine.product(&refs)?;
            Ok(prod
                .coeffs()
                .iter()
                .zip(abs)
                .map(|(c, &r)| -w * multiplier_by_abs(Multiplier::W, t - tp, r) * c)
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut acc = vec![Complex64::new(0.0, 0.0); abs.len()];
    for term in terms {
        for (a, b) in acc.iter_mut().zip(term) {
            *a += b;
        }
    }
    SpectralField::from_coeffs(*engine.lattice(), acc)
}

/// I_k(u₁, …, u_k)(t) = −∫₀ᵗ W(t − t′) Π uⱼ(t′) dt′ by adaptive composite Gauss–Legendre.
///
/// The panel count doubles from `initial_panels` until two successive
/// results agree to `tol` relative to the larger coefficient.
pub fn duhamel_ik(args: &[&dyn FieldTrajectory], t: f64, quad: &QuadratureSpec) -> Result<SpectralField> {
    if args.is_empty() {
        return Err(Error::Config("Duhamel integral needs at least one factor".into()));
    }
    let lattice = args[0].lattice();
    if args.iter().any(|a| a.lattice() != lattice) {
        return Err(Error::LatticeMismatch("Duhamel factors live on different lattices".into()));
    }
    if !(t >= 0.0) || args.iter().any(|a| a.end() < t) {
        return Err(Error::Domain(format!("time {t} outside the factors' range")));
    }
    if t == 0.0 {
        return Ok(SpectralField::zeros(lattice));
    }
    if quad.order < 1 || quad.initial_panels < 1 {
        return Err(Error::Config(format!("invalid quadrature {quad:?}")));
    }
    let engine = ProductEngine::new(lattice, args.len())?;
    let abs = lattice.abs_values();
    let (nodes, weights) = gauss_legendre(quad.order);
    let mut panels = quad.initial_panels;
    let mut prev = composite(args, &engine, &abs, t, panels, &nodes, &weights)?;
    let mut achieved = f64::INFINITY;
    while panels * 2 <= quad.max_panels {
        panels *= 2;
        let next = composite(args, &engine, &abs, t, panels, &nodes, &weights)?;
        let scale = next.max_abs().max(prev.max_abs());
        let diff = next.coeffs().iter().zip(prev.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        achieved = if scale == 0.0 { 0.0 } else { diff / scale };
        if achieved <= quad.tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Accuracy {
        message: format!("Duhamel quadrature did not settle with {panels} panels"),
        achieved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::trajectory::{Frozen, LinearFlow};
    use crate::spectral_core::{FieldPair, FrequencyLattice};

    #[test]
    fn zero_time_gives_zero() {
        let lat = FrequencyLattice::new(1, 4).unwrap();
        let f = SpectralField::from_modes(lat, &[([1, 0, 0], Complex64::new(1.0, 0.0))]).unwrap();
        let flow = LinearFlow::new(FieldPair::new(f.clone(), SpectralField::zeros(lat)).unwrap());
        let out = duhamel_ik(&[&flow, &flow], 0.0, &QuadratureSpec::default()).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn positive_product_gives_negative_output() {
        // constant mean: I(t) = −t²/2·c² at leading order
        let lat = FrequencyLattice::new(1, 4).unwrap();
        let f = SpectralField::from_modes(lat, &[([0, 0, 0], Complex64::new(0.5, 0.0))]).unwrap();
        let a = Frozen(f);
        let out = duhamel_ik(&[&a, &a], 1e-3, &QuadratureSpec::default()).unwrap();
        let c = out.get(&[0, 0, 0]).unwrap().re;
        assert!(c < 0.0);
        assert!((c + 0.25 * 0.5e-6).abs() < 1e-15);
        assert!(out.coeffs().iter().all(|c| c.re <= 0.0));
    }

    #[test]
    fn mismatched_lattices_rejected() {
        let a = Frozen(SpectralField::zeros(FrequencyLattice::new(1, 4).unwrap()));
        let b = Frozen(SpectralField::zeros(FrequencyLattice::new(1, 5).unwrap()));
        assert!(duhamel_ik(&[&a, &b], 0.1, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn unreachable_tolerance_reports_accuracy() {
        let lat = FrequencyLattice::new(1, 4).unwrap();
        let f = SpectralField::from_modes(lat, &[([2, 0, 0], Complex64::new(1.0, 0.0))]).unwrap();
        let flow = LinearFlow::new(FieldPair::new(f, SpectralField::zeros(lat)).unwrap());
        let quad = QuadratureSpec { order: 2, initial_panels: 1, max_panels: 4, tol: 1e-14 };
        match duhamel_ik(&[&flow, &flow], 1.0, &quad) {
            Err(Error::Accuracy { achieved, .. }) => assert!(achieved > 1e-14),
            other => panic!("{other:?}"),
        }
    }
}
