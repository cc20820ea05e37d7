//! First Picard iterate of box data two ways: Duhamel quadrature of the
//! linear flow, and the closed form summed over frequency tuples.

use vnlw::data_factory::{build_adversarial, BoxSpec, Variant};
use vnlw::estimates::xi1_closed_form_field;
use vnlw::picard::{duhamel_ik, FieldTrajectory, LinearFlow, QuadratureSpec};
use vnlw::spectral_core::{hs_norm, FrequencyLattice};

fn main() -> vnlw::Result<()> {
    for (k, a) in [(2, 1.0), (2, 16.0), (3, 8.0)] {
        let spec = BoxSpec::new(1, k, 16, a, Variant::LongTime)?;
        let lattice = FrequencyLattice::new(1, k * spec.required_cutoff())?;
        let data = build_adversarial(spec, 1.0, lattice)?;
        let flow = LinearFlow::new(data.pair.clone());
        let args: Vec<&dyn FieldTrajectory> = vec![&flow; k];
        println!("k = {k}, A = {a}, |support| = {}", data.support_count);
        for t in [0.01, 0.1, 0.5, 1.0] {
            let quad = duhamel_ik(&args, t, &QuadratureSpec::default())?;
            let exact = xi1_closed_form_field(&data, t, lattice)?;
            println!(
                "  t = {t:<5} ||Xi1||_H^-3/4 = {:.6e}   relative difference {:.1e}",
                hs_norm(&exact, -0.75),
                quad.relative_error(&exact)?
            );
        }
    }
    Ok(())
}
