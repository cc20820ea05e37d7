use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::Config;
use super::laws::{eps_sum_bracket, flips_ok, threshold_flips};
use super::report::{Check, ExperimentParams, ExperimentReport, SCHEMA_VERSION};
use super::wellposedness::schauder_constants;
use crate::data_factory::{background_data, build_adversarial, BoxSpec, Variant};
use crate::estimates::{exact_time_integral, thresholds, xi1_closed_form_field, Bracket};
use crate::picard::{duhamel_ik, enumerate_trees, eval_tree_on_grid, fuss_catalan, xi_iterates_on, FieldTrajectory, GridSpec, LinearFlow, QuadratureSpec};
use crate::spectral_core::{fl01_pair_norm, hs_pair_norm, FieldPair, FrequencyLattice, SpectralField};
use crate::Result;

/// Outcome of the invariant suite. Contains no timings, so equal seeds give
/// byte-identical JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn threshold_table() -> Result<Check> {
    let mut ok = true;
    for d in 1..=4 {
        for k in 2..=8 {
            let th = thresholds(d, k)?;
            ok &= (th.s_vis > th.s_scal) == (d == 1 || (d == 2 && k == 2));
        }
    }
    Ok(Check::new("s_vis > s_scal exactly for d = 1 and (d, k) = (2, 2)", f64::from(u8::from(ok)), "= 1", ok))
}

fn tree_counts() -> Result<Check> {
    let mut ok = true;
    for k in 2..=5 {
        for j in 0..=4 {
            ok &= Some(enumerate_trees(j, k)?.len() as u128) == fuss_catalan(j, k);
        }
    }
    Ok(Check::new("tree counts are Fuss-Catalan for k <= 5, j <= 4", f64::from(u8::from(ok)), "= 1", ok))
}

fn tree_sums(seed: u64) -> Result<Check> {
    let lattice = FrequencyLattice::new(1, 12)?;
    let pair = background_data(lattice, seed, 1.0)?.scaled(0.25);
    let grid = GridSpec::uniform(0.05).build(0.2)?;
    let mut worst: f64 = 0.0;
    for k in 2..=3 {
        let it = xi_iterates_on(&pair, k, grid.clone(), 3)?;
        let last = grid.len() - 1;
        for j in 1..=3 {
            let mut sum = SpectralField::zeros(lattice);
            for tree in enumerate_trees(j, k)? {
                sum.axpy(1.0, &eval_tree_on_grid(&tree, &pair, &grid)?[last])?;
            }
            let target = &it.level(j)[last];
            let mut diff = sum;
            diff.axpy(-1.0, target)?;
            worst = worst.max(diff.max_abs());
        }
    }
    Ok(Check::below("max |sum of tree terms - Xi_j|, j <= 3, k <= 3", worst, 1e-8))
}

fn oracle(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for k in 2..=3 {
        let spec = BoxSpec::new(1, k, 16, 1.0, Variant::LongTime)?;
        let lattice = FrequencyLattice::new(1, k * spec.required_cutoff())?;
        let data = build_adversarial(spec, 1.0, lattice)?;
        let flow = LinearFlow::new(data.pair.clone());
        let args: Vec<&dyn FieldTrajectory> = vec![&flow; k];
        for _ in 0..3 {
            let t: f64 = rng.gen_range(0.05..1.0);
            let quad = duhamel_ik(&args, t, &QuadratureSpec::default())?;
            let exact = xi1_closed_form_field(&data, t, lattice)?;
            worst = worst.max(quad.relative_error(&exact)?);
        }
    }
    Ok(Check::below("quadrature vs closed-form Xi1 (d=1, N=16, A=1)", worst, 1e-6))
}

fn time_integral_derivative(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let a = rng.gen_range(-5.0..0.0);
        let b = rng.gen_range(-10.0..10.0);
        let c = rng.gen_range(-3.0..3.0);
        let t = rng.gen_range(0.1..2.0);
        let h = 1e-5;
        let fd = (exact_time_integral(a, b, c, t + h) - exact_time_integral(a, b, c, t - h)) / (2.0 * h);
        worst = worst.max((fd - (a * t).exp() * (b * t + c).cos()).abs());
    }
    Check::below("d/dt of exact time integral vs integrand", worst, 1e-8)
}

fn background(seed: u64) -> Result<Vec<Check>> {
    let lattice = FrequencyLattice::new(2, 6)?;
    let a = background_data(lattice, seed, 1.0)?;
    let b = background_data(lattice, seed, 1.0)?;
    let same = a == b;
    let norms = [hs_pair_norm(&a, 0.0), fl01_pair_norm(&a)];
    let in_range = norms.iter().all(|v| (0.5..=2.0).contains(v));
    let defect = a.u0.conjugate_symmetry_defect().max(a.u1.conjugate_symmetry_defect());
    Ok(vec![
        Check::new("background reproducible from seed", f64::from(u8::from(same)), "= 1", same),
        Check::new("background norms in [1/2, 2]", norms[0].min(norms[1]), ">= 1/2", in_range),
        Check::below("background conjugate symmetry defect", defect, 1e-15),
    ])
}

fn round_trip() -> Result<Check> {
    let mut r = ExperimentReport::new("round_trip", ExperimentParams { d: 1, k: 2, s: -0.75, sigma: None, n: None, extra: Vec::new() });
    r.checks.push(Check::below("x", 0.1 + 0.2, 1.0));
    let r = r.finish();
    let ok = ExperimentReport::from_json(&r.to_json()?)? == r;
    Ok(Check::new("report JSON round trip", f64::from(u8::from(ok)), "= 1", ok))
}

/// Fast invariants across every module. Only `cfg.seed` affects the draws.
pub fn verify(cfg: &Config) -> Result<VerifyReport> {
    let seed = cfg.seed;
    let mut checks = vec![threshold_table()?, tree_counts()?, tree_sums(seed)?, oracle(seed)?, time_integral_derivative(seed)];
    checks.extend(background(seed)?);
    for row in eps_sum_bracket(&[2, 3, 4, 5], &[64, 128, 256], &Bracket::default())? {
        checks.push(Check::new(format!("eps-sum bracket spread k={}", row.k), row.spread, "<= 100", row.pass));
    }
    let flips = threshold_flips(&[(1, 2), (1, 3), (2, 2), (2, 3)], 0.05)?;
    let ok = flips_ok(&flips);
    checks.push(Check::new("threshold flips at -1/k and s_vis", flips.len() as f64, "all agree", ok));
    let l2 = schauder_constants(1, 0.0, 2.0, 2.0, &[1.0, 0.5, 0.25, 0.125, 0.0625])?.constant();
    checks.push(Check::within("Schauder C (0,2,2)", l2, 1.0, 1e-12));
    let pair = FieldPair::zeros(FrequencyLattice::new(1, 4)?);
    checks.push(Check::new("zero pair has zero norm", hs_pair_norm(&pair, -1.0), "= 0", hs_pair_norm(&pair, -1.0) == 0.0));
    checks.push(round_trip()?);
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { schema_version: SCHEMA_VERSION, seed, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_and_is_deterministic() {
        let cfg = Config::default();
        let a = verify(&cfg).unwrap();
        assert!(a.pass, "{:#?}", a.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        assert_eq!(a.to_json().unwrap(), verify(&cfg).unwrap().to_json().unwrap());
    }
}
