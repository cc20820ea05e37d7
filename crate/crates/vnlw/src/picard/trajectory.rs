use crate::spectral_core::{apply_linear_flow, FieldPair, FrequencyLattice, SpectralField};
use crate::Result;

/// A field-valued function of time on [0, end].
pub trait FieldTrajectory: Sync {
    fn lattice(&self) -> FrequencyLattice;
    fn end(&self) -> f64;
    fn at(&self, t: f64) -> Result<SpectralField>;
}

/// t ↦ V(t)(u₀, u₁), exact at every t ≥ 0.
#[derive(Clone, Debug)]
pub struct LinearFlow {
    pub pair: FieldPair,
}

impl LinearFlow {
    pub fn new(pair: FieldPair) -> Self {
        Self { pair }
    }
}

impl FieldTrajectory for LinearFlow {
    fn lattice(&self) -> FrequencyLattice {
        *self.pair.lattice()
    }

    fn end(&self) -> f64 {
        f64::INFINITY
    }

    fn at(&self, t: f64) -> Result<SpectralField> {
        apply_linear_flow(t, &self.pair)
    }
}

/// Constant-in-time field, mostly for tests.
#[derive(Clone, Debug)]
pub struct Frozen(pub SpectralField);

impl FieldTrajectory for Frozen {
    fn lattice(&self) -> FrequencyLattice {
        *self.0.lattice()
    }

    fn end(&self) -> f64 {
        f64::INFINITY
    }

    fn at(&self, _t: f64) -> Result<SpectralField> {
        Ok(self.0.clone())
    }
}
