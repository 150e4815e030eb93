use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues_with, kron, pauli, partial_trace, ComplexMatrix, SubsystemDims,
};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> PureState<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = amplitudes
            .iter()
            .fold(T::zero(), |a, z| a + z.norm_sqr())
            .sqrt();
        if amplitudes.is_empty() || (norm - T::one()).abs() > Tolerances::effective::<T>(1e-12) {
            return Err(Error::NotNormalized {
                norm: norm.to_f64_lossy(),
            });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = amplitudes
            .iter()
            .fold(T::zero(), |a, z| a + z.norm_sqr())
            .sqrt();
        if norm.is_zero() || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm: norm.to_f64_lossy(),
            });
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex<T>>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::zero(), |a, (x, y)| a + x.conj() * y)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                v.push(a * b);
            }
        }
        Self { amplitudes: v }
    }

    pub fn projector(&self) -> ComplexMatrix<T> {
        ComplexMatrix::projector(&self.amplitudes)
    }

    pub fn density(&self) -> DensityMatrix<T> {
        let dims = if self.dim().is_power_of_two() {
            SubsystemDims::qubits(self.dim().trailing_zeros() as usize)
        } else {
            SubsystemDims::new(vec![self.dim()]).expect("nonzero dim")
        };
        DensityMatrix::from_trusted(self.projector(), dims)
    }

    /// (⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩) of a qubit state.
    pub fn bloch_vector(&self) -> [T; 3] {
        assert_eq!(self.dim(), 2, "bloch_vector needs a qubit");
        pauli::<T>().map(|p| p.sandwich(&self.amplitudes).re)
    }
}

/// Quantum state: Hermitian, unit trace, positive semidefinite, with a tensor
/// factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    dims: SubsystemDims,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>, dims: SubsystemDims) -> Result<Self> {
        Self::with_tolerances(matrix, dims, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(
        matrix: ComplexMatrix<T>,
        dims: SubsystemDims,
        tol: &Tolerances,
    ) -> Result<Self> {
        dims.check(matrix.dim())?;
        let deviation = matrix.hermitian_deviation();
        if deviation > Tolerances::effective::<T>(tol.herm) {
            return Err(Error::NotHermitian {
                deviation: deviation.to_f64_lossy(),
            });
        }
        let trace = matrix.trace().re;
        if (trace - T::one()).abs() > Tolerances::effective::<T>(tol.trace) {
            return Err(Error::NotUnitTrace {
                trace: trace.to_f64_lossy(),
            });
        }
        let min = hermitian_eigenvalues_with(&matrix, tol.herm)?[0];
        if min < -Tolerances::effective::<T>(tol.psd) {
            return Err(Error::NotPositive {
                min_eigenvalue: min.to_f64_lossy(),
            });
        }
        Ok(Self { matrix, dims })
    }

    /// Qubit register state, dimension must be a power of two.
    pub fn qubits(matrix: ComplexMatrix<T>) -> Result<Self> {
        let d = matrix.dim();
        if !d.is_power_of_two() {
            return Err(Error::BadSubsystemDims {
                dims: vec![],
                dim: d,
            });
        }
        Self::new(matrix, SubsystemDims::qubits(d.trailing_zeros() as usize))
    }

    /// Skips validation. Only for results of operations that preserve the
    /// state invariants (tensor products, permutations, channels).
    pub(crate) fn from_trusted(matrix: ComplexMatrix<T>, dims: SubsystemDims) -> Self {
        debug_assert_eq!(matrix.dim(), dims.total());
        Self { matrix, dims }
    }

    pub fn maximally_mixed(dims: SubsystemDims) -> Self {
        let d = dims.total();
        let m = ComplexMatrix::identity(d).scale(T::one() / T::from_usize(d).unwrap());
        Self { matrix: m, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.as_slice().to_vec();
        dims.extend_from_slice(other.dims.as_slice());
        Self {
            matrix: kron(&self.matrix, &other.matrix),
            dims: SubsystemDims::new(dims).expect("valid dims"),
        }
    }

    pub fn reduced(&self, keep: &[usize]) -> Result<Self> {
        let m = partial_trace(&self.matrix, &self.dims, keep)?;
        let d = self.dims.as_slice();
        let dims = SubsystemDims::new(keep.iter().map(|&k| d[k]).collect())?;
        Ok(Self { matrix: m, dims })
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        hermitian_eigenvalues_with(&self.matrix, Tolerances::DEFAULT.herm)
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> T {
        self.matrix.trace_product(&self.matrix).re
    }

    pub fn expectation(&self, op: &ComplexMatrix<T>) -> T {
        op.trace_product(&self.matrix).re
    }
}

/// Hermitian measurement observable.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> Observable<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > Tolerances::effective::<T>(Tolerances::DEFAULT.herm) {
            return Err(Error::NotHermitian {
                deviation: deviation.to_f64_lossy(),
            });
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_trusted(matrix: ComplexMatrix<T>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Projector onto the `outcome` (±1) eigenspace of a ±1-valued observable.
    pub fn outcome_projector(&self, outcome: i8) -> ComplexMatrix<T> {
        let id = ComplexMatrix::identity(self.dim());
        let signed = if outcome >= 0 {
            self.matrix.clone()
        } else {
            self.matrix.scale(-T::one())
        };
        (&id + &signed).scale(T::lit(0.5))
    }
}

/// Three orthonormal measurement axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisTriad<T> {
    axes: [[T; 3]; 3],
}

impl<T: Real> AxisTriad<T> {
    pub fn new(axes: [[T; 3]; 3]) -> Result<Self> {
        let mut deviation = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let dot = (0..3).fold(T::zero(), |a, k| a + axes[i][k] * axes[j][k]);
                let target = if i == j { T::one() } else { T::zero() };
                deviation = deviation.max((dot - target).abs());
            }
        }
        if deviation >= Tolerances::effective::<T>(1e-12) {
            return Err(Error::NotOrthonormal {
                deviation: deviation.to_f64_lossy(),
            });
        }
        Ok(Self { axes })
    }

    /// The x, y, z axes: Alice and Bob measure σ_x, σ_y, σ_z.
    pub fn pauli() -> Self {
        let (o, l) = (T::zero(), T::one());
        Self {
            axes: [[l, o, o], [o, l, o], [o, o, l]],
        }
    }

    pub fn axes(&self) -> &[[T; 3]; 3] {
        &self.axes
    }

    pub fn observables(&self) -> [Observable<T>; 3] {
        self.axes
            .map(|a| spin_observable(a).expect("triad axes are unit vectors"))
    }

    /// Same axes, listed in the order `perm`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self {
            axes: perm.map(|p| self.axes[p]),
        }
    }
}

/// A = Σ_j s_j σ_j for a unit axis s.
pub fn spin_observable<T: Real>(axis: [T; 3]) -> Result<Observable<T>> {
    let norm = axis.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
    if (norm - T::one()).abs() > Tolerances::effective::<T>(1e-12) {
        return Err(Error::NonUnitAxis {
            norm: norm.to_f64_lossy(),
        });
    }
    let [x, y, z] = pauli::<T>();
    let m = &(&x.scale(axis[0]) + &y.scale(axis[1])) + &z.scale(axis[2]);
    Ok(Observable::from_trusted(m))
}

/// ⟨A₁⟩² + ⟨A₂⟩² + ⟨A₃⟩² for a qubit pure state.
pub fn lemma1_sum<T: Real>(state: &PureState<T>, triad: &AxisTriad<T>) -> T {
    triad.observables().iter().fold(T::zero(), |acc, a| {
        let e = a.matrix().sandwich(state.amplitudes()).re;
        acc + e * e
    })
}

/// Mixed-state version of [`lemma1_sum`]; at most 1.
pub fn lemma1_sum_mixed<T: Real>(state: &DensityMatrix<T>, triad: &AxisTriad<T>) -> T {
    triad.observables().iter().fold(T::zero(), |acc, a| {
        let e = state.expectation(a.matrix());
        acc + e * e
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn spin_observable_examples() {
        let [x, _, z] = pauli::<f64>();
        assert_eq!(spin_observable([0.0, 0.0, 1.0]).unwrap().matrix(), &z);
        assert_eq!(spin_observable([1.0, 0.0, 0.0]).unwrap().matrix(), &x);
        assert!(matches!(
            spin_observable([1.0, 1.0, 0.0]),
            Err(Error::NonUnitAxis { .. })
        ));
    }

    #[test]
    fn lemma1_basis_state_and_mixed() {
        let zero = PureState::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((lemma1_sum(&zero, &AxisTriad::pauli()) - 1.0).abs() < 1e-15);
        let mixed = DensityMatrix::<f64>::maximally_mixed(SubsystemDims::qubits(1));
        assert_eq!(lemma1_sum_mixed(&mixed, &AxisTriad::pauli()), 0.0);
    }

    #[test]
    fn density_validation() {
        let bad_trace = ComplexMatrix::<f64>::diag(&[0.5, 0.6]);
        assert!(matches!(
            DensityMatrix::qubits(bad_trace),
            Err(Error::NotUnitTrace { .. })
        ));
        let negative = ComplexMatrix::<f64>::diag(&[1.2, -0.2]);
        assert!(matches!(
            DensityMatrix::qubits(negative),
            Err(Error::NotPositive { .. })
        ));
        let mut non_herm = ComplexMatrix::<f64>::diag(&[0.5, 0.5]);
        non_herm[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(
            DensityMatrix::qubits(non_herm),
            Err(Error::NotHermitian { .. })
        ));
        assert!(DensityMatrix::qubits(ComplexMatrix::<f64>::diag(&[0.3, 0.7])).is_ok());
    }

    #[test]
    fn triad_rejects_non_orthogonal() {
        assert!(AxisTriad::new([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]).is_err());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(AxisTriad::new([[h, h, 0.0], [-h, h, 0.0], [0.0, 0.0, 1.0]]).is_ok());
    }

    #[test]
    fn outcome_projectors_resolve_identity() {
        let a = spin_observable([0.6, 0.0, 0.8]).unwrap();
        let sum = &a.outcome_projector(1) + &a.outcome_projector(-1);
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        let diff = &a.outcome_projector(1) - &a.outcome_projector(-1);
        assert!(diff.max_abs_diff(a.matrix()) < 1e-15);
    }
}
