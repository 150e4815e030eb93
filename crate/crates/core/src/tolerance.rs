//! Numerical tolerances shared by every validation in the crate.

use crate::scalar::Real;

/// Validation thresholds.
///
/// Values are absolute and stated for `f64`. When a check runs in a lower
/// precision the threshold is floored at a small multiple of that type's
/// machine epsilon, see [`Tolerances::effective`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max entrywise |m - m†| for a matrix to count as Hermitian.
    pub herm: f64,
    /// Most negative eigenvalue still accepted as positive semidefinite.
    pub psd: f64,
    /// Allowed |Tr ρ - 1|.
    pub trace: f64,
    /// Target accuracy of the eigenvalue solver.
    pub eig: f64,
}

pub const HERM_TOL: f64 = 1e-9;
pub const PSD_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-9;
pub const EIG_TOL: f64 = 1e-10;

/// Probabilities in `[-PROB_CLAMP, 0)` are rounded to zero; anything more
/// negative is an invalid state.
pub const PROB_CLAMP: f64 = 1e-12;
/// Outcomes at or below this probability carry no conditional state.
pub const NULL_OUTCOME: f64 = 1e-12;
/// PPT minimum eigenvalue below which a two-qubit state counts as entangled.
pub const PPT_ENTANGLED: f64 = 1e-8;
/// |lhs - bound| below which a witness verdict is reported as inconclusive.
pub const BORDERLINE: f64 = 1e-9;

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        herm: HERM_TOL,
        psd: PSD_TOL,
        trace: TRACE_TOL,
        eig: EIG_TOL,
    };

    pub const STRICT: Tolerances = Tolerances {
        herm: 1e-12,
        psd: 1e-12,
        trace: 1e-12,
        eig: 1e-12,
    };

    pub fn effective<T: Real>(tol: f64) -> T {
        let floor = T::epsilon() * T::lit(1e3);
        T::lit(tol).max(floor)
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
