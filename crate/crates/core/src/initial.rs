use crate::quantum::{init_coherent, QuantumModel, StateVector};
use crate::semiclassical::BlochPair;

/// Per-region spin-coherent starting directions (polar, azimuthal), radians.
///
/// All zeros is both regions polarized along +z.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InitialAngles {
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
}

impl InitialAngles {
    pub fn bloch_pair(&self) -> BlochPair {
        BlochPair::from_angles(self.theta1, self.phi1, self.theta2, self.phi2)
    }

    pub fn quantum_state(&self, model: &QuantumModel) -> StateVector {
        init_coherent(model, self.theta1, self.phi1, self.theta2, self.phi2)
    }
}
