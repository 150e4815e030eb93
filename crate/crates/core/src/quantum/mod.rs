//! Physical building blocks: qubit states, spin observables, axis triads and
//! the generalized elegant joint measurement.

mod ejm;
mod state;

pub use ejm::{
    bloch_pure_state, ejm_basis, ejm_component_observable, tetra_vertices, EjmBasis,
    TETRA_VERTICES,
};
pub use state::{
    lemma1_sum, lemma1_sum_mixed, spin_observable, AxisTriad, DensityMatrix, Observable,
    PureState,
};
