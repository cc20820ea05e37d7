//! Invariants checked over random inputs.

use approx::assert_relative_eq;
use num_rational::Ratio;
use proptest::prelude::*;

use vnlw::data_factory::{build_adversarial, BoxSpec, Variant};
use vnlw::estimates::{exact_time_integral, thresholds, xi1_closed_form};
use vnlw::harness::Config;
use vnlw::picard::{enumerate_trees, fuss_catalan, gauss_legendre};
use vnlw::spectral_core::{
    apply_linear_flow, hs_norm, multiplier_by_abs, pointwise_power, FieldPair, FrequencyLattice, Multiplier, ProductEngine,
    SpectralField,
};
use vnlw::Complex64;

/// Real field (conjugate-symmetric coefficients) supported in |ξ|∞ ≤ radius.
fn real_field(lattice: FrequencyLattice, radius: i64, values: &[(f64, f64)]) -> SpectralField {
    let mut f = SpectralField::zeros(lattice);
    let mut it = values.iter().cycle();
    for xi in lattice.iter().collect::<Vec<_>>() {
        if xi.iter().any(|c| c.abs() > radius) || f.get(&xi).unwrap() != Complex64::new(0.0, 0.0) {
            continue;
        }
        let (re, im) = *it.next().unwrap();
        let minus = [-xi[0], -xi[1], -xi[2]];
        if xi == minus {
            f.set(&xi, Complex64::new(re, 0.0)).unwrap();
        } else {
            f.set(&xi, Complex64::new(re, im)).unwrap();
            f.set(&minus, Complex64::new(re, -im)).unwrap();
        }
    }
    f
}

fn coeffs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hs_norm_is_homogeneous(values in coeffs(), a in -4.0..4.0f64, s in -2.0..2.0f64) {
        let lat = FrequencyLattice::new(1, 8).unwrap();
        let f = real_field(lat, 8, &values);
        assert_relative_eq!(hs_norm(&f.scaled(a), s), a.abs() * hs_norm(&f, s), max_relative = 1e-12, epsilon = 1e-300);
    }

    #[test]
    fn hs_norm_increases_with_s(values in coeffs(), s in -2.0..2.0f64, ds in 0.0..1.0f64) {
        let lat = FrequencyLattice::new(2, 4).unwrap();
        let f = real_field(lat, 4, &values);
        prop_assert!(hs_norm(&f, s) <= hs_norm(&f, s + ds) * (1.0 + 1e-14));
    }

    #[test]
    fn product_matches_direct_convolution(a in coeffs(), b in coeffs()) {
        let lat = FrequencyLattice::new(1, 6).unwrap();
        let f = real_field(lat, 3, &a);
        let g = real_field(lat, 3, &b);
        let fast = ProductEngine::new(lat, 2).unwrap().product(&[&f, &g]).unwrap();
        for xi in lat.iter() {
            let mut direct = Complex64::new(0.0, 0.0);
            for eta in lat.iter() {
                if let Some(gv) = g.get(&[xi[0] - eta[0], 0, 0]) {
                    direct += f.get(&eta).unwrap() * gv;
                }
            }
            prop_assert!((fast.get(&xi).unwrap() - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn powers_of_real_fields_stay_real(values in coeffs(), k in 2usize..5) {
        let lat = FrequencyLattice::new(2, 3).unwrap();
        let f = real_field(lat, 1, &values);
        let p = pointwise_power(&f, k).unwrap();
        prop_assert!(p.conjugate_symmetry_defect() < 1e-12);
    }

    #[test]
    fn kernel_solves_the_linear_ode(r in 0.0..8.0f64, t in 0.05..2.0f64) {
        // m = P·V1 solves m'' + r m' + r² m = 0
        let h = 1e-4;
        let m = |t| multiplier_by_abs(Multiplier::W, t, r);
        let d1 = (m(t + h) - m(t - h)) / (2.0 * h);
        let d2 = (m(t + h) - 2.0 * m(t) + m(t - h)) / (h * h);
        prop_assert!((d2 + r * d1 + r * r * m(t)).abs() < 1e-4 * (1.0 + r * r));
    }

    #[test]
    fn linear_flow_starts_at_the_data(values in coeffs(), v in coeffs()) {
        let lat = FrequencyLattice::new(1, 8).unwrap();
        let pair = FieldPair::new(real_field(lat, 8, &values), real_field(lat, 8, &v)).unwrap();
        let u = apply_linear_flow(0.0, &pair).unwrap();
        prop_assert!(u.relative_error(&pair.u0).unwrap() < 1e-15);
    }

    #[test]
    fn time_integral_matches_quadrature(a in -3.0..1.0f64, b in -20.0..20.0f64, c in -3.0..3.0f64, t in 0.0..2.0f64) {
        let (x, w) = gauss_legendre(60);
        let numeric: f64 = x
            .iter()
            .zip(&w)
            .map(|(x, w)| {
                let s = 0.5 * t * (x + 1.0);
                0.5 * t * w * (a * s).exp() * (b * s + c).cos()
            })
            .sum();
        prop_assert!((exact_time_integral(a, b, c, t) - numeric).abs() < 1e-11);
    }

    #[test]
    fn first_iterate_is_homogeneous_of_degree_k(k in 2usize..4, r in 0.1..5.0f64, t in 0.01..1.0f64) {
        let spec = BoxSpec::new(1, k, 16, 8.0, Variant::LongTime).unwrap();
        let lat = FrequencyLattice::new(1, spec.required_cutoff()).unwrap();
        let one = build_adversarial(spec, 1.0, lat).unwrap();
        let scaled = build_adversarial(spec, r, lat).unwrap();
        let xi = [0i64, 0, 0];
        let base = xi1_closed_form(&one, t, &xi).unwrap();
        let value = xi1_closed_form(&scaled, t, &xi).unwrap();
        assert_relative_eq!(value.re, r.powi(k as i32) * base.re, max_relative = 1e-12, epsilon = 1e-300);
    }

    #[test]
    fn threshold_order(d in 1usize..4, k in 2usize..8) {
        let th = thresholds(d, k).unwrap();
        let (di, ki) = (d as i64, k as i64);
        prop_assert!(th.s_m >= th.s_scal && th.s_m >= Ratio::new(-1, ki));
        prop_assert_eq!(th.s_vis - th.s_scal, Ratio::new(2 * ki - (di + 1) * (ki - 1), ki * (ki - 1)));
    }

    #[test]
    fn config_text_round_trips(margin in 1.0..100.0f64, order in 2usize..16, seed in any::<u64>(), tol in 1e-14..1e-6f64) {
        let cfg = Config { margin, quadrature_order: order, seed, quadrature_tol: tol, ..Config::default() };
        let back: Config = cfg.to_text().parse().unwrap();
        prop_assert_eq!(back, cfg);
    }
}

#[test]
fn tree_counts_are_fuss_catalan() {
    for k in 2..=5 {
        for j in 0..=4 {
            assert_eq!(Some(enumerate_trees(j, k).unwrap().len() as u128), fuss_catalan(j, k), "j = {j}, k = {k}");
        }
    }
    assert_eq!(fuss_catalan(3, 3), Some(12));
}
