//! Steering detection in quantum repeater networks.
//!
//! The crate computes measurement statistics of one- and two-relay networks
//! from explicit density matrices and evaluates network CHSH-like steering
//! witnesses, the bilocal inequality and the PPT criterion on them.
//!
//! Everything numeric is generic over [`Real`] (`f64` and `f32`); the aliases
//! below fix the scalar to `f64`, which is what the tolerances are tuned for.

pub mod channels;
pub mod error;
pub mod linalg;
pub mod network;
pub mod quantum;
pub mod sampling;
pub mod scalar;
pub mod scenario;
pub mod tolerance;
pub mod witnesses;

pub use error::{Error, Result};
pub use scalar::Real;
pub use tolerance::Tolerances;

/// Complex amplitude over `f64`.
pub type Complex = num_complex::Complex<f64>;
pub type CMatrix = linalg::ComplexMatrix<f64>;
pub type Density = quantum::DensityMatrix<f64>;
pub type Pure = quantum::PureState<f64>;
pub type Obs = quantum::Observable<f64>;
pub type Triad = quantum::AxisTriad<f64>;
pub type Ejm = quantum::EjmBasis<f64>;
pub type ThreeParty = network::Scenario3<f64>;
pub type FourParty = network::Scenario4<f64>;
pub type Table3 = network::CorrelatorTable3<f64>;
pub type Table4 = network::CorrelatorTable4<f64>;
pub type Assemblage = network::ConditionalAssemblage<f64>;
pub type Verdict = witnesses::WitnessVerdict<f64>;
pub type Bilocal = witnesses::BilocalVerdict<f64>;
