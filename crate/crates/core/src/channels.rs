//! Noisy singlet sources and the length-dependent depolarizing channel.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{kron, partial_trace, permute_subsystems, ComplexMatrix, SubsystemDims};
use crate::quantum::{DensityMatrix, PureState};
use crate::scalar::Real;

/// Noise settings for one source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseParams<T> {
    /// White-noise weight v in [0, 1].
    Depolarizing { v: T },
    /// Decay probability p in [0, 1].
    AmplitudeDamping { p: T },
    /// Fiber of length `l` ≥ 0 with attenuation `alpha` > 0 per unit length.
    Distance { alpha: T, l: T },
}

impl<T: Real> NoiseParams<T> {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseParams::Depolarizing { v } => unit_interval("v", v),
            NoiseParams::AmplitudeDamping { p } => unit_interval("p", p),
            NoiseParams::Distance { alpha, l } => {
                if !(alpha > T::zero() && alpha.is_finite()) {
                    return Err(out_of_range("alpha", alpha, "(0, inf)"));
                }
                if !(l >= T::zero() && l.is_finite()) {
                    return Err(out_of_range("l", l, "[0, inf)"));
                }
                Ok(())
            }
        }
    }

    /// The two-qubit source state: a singlet subjected to this noise. For
    /// `Distance` the channel acts on the first qubit.
    pub fn source(&self) -> Result<DensityMatrix<T>> {
        match *self {
            NoiseParams::Depolarizing { v } => depolarized_singlet(v),
            NoiseParams::AmplitudeDamping { p } => amplitude_damped_singlet(p),
            NoiseParams::Distance { alpha, l } => {
                apply_depolarizing_channel(&singlet(), 0, alpha, l)
            }
        }
    }
}

fn out_of_range<T: Real>(name: &'static str, value: T, range: &'static str) -> Error {
    Error::ParameterOutOfRange {
        name,
        value: value.to_f64_lossy(),
        range,
    }
}

fn unit_interval<T: Real>(name: &'static str, x: T) -> Result<()> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(out_of_range(name, x, "[0, 1]"))
    }
}

/// |φ⟩ = (|01⟩ - |10⟩)/√2.
pub fn singlet_state<T: Real>() -> PureState<T> {
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let o = T::zero();
    PureState::new(vec![
        Complex::new(o, o),
        Complex::new(h, o),
        Complex::new(-h, o),
        Complex::new(o, o),
    ])
    .expect("singlet is normalized")
}

pub fn singlet<T: Real>() -> DensityMatrix<T> {
    singlet_state().density()
}

/// (1-v)|φ⟩⟨φ| + v·I/4.
pub fn depolarized_singlet<T: Real>(v: T) -> Result<DensityMatrix<T>> {
    unit_interval("v", v)?;
    let s = singlet::<T>();
    let noise = ComplexMatrix::identity(4).scale(v / T::lit(4.0));
    let m = &s.matrix().scale(T::one() - v) + &noise;
    Ok(DensityMatrix::from_trusted(m, SubsystemDims::qubits(2)))
}

/// Amplitude-damping Kraus pair [K₁, K₂]: K₁ = [[0, √p], [0, 0]] is the decay
/// jump and K₂ = [[1, 0], [0, √(1-p)]] the no-decay branch.
pub fn amplitude_damping_kraus<T: Real>(p: T) -> Result<[ComplexMatrix<T>; 2]> {
    unit_interval("p", p)?;
    let o = Complex::new(T::zero(), T::zero());
    let r = |x: T| Complex::new(x.sqrt(), T::zero());
    Ok([
        ComplexMatrix::from_raw(2, vec![o, r(p), o, o]),
        ComplexMatrix::from_raw(2, vec![r(T::one()), o, o, r(T::one() - p)]),
    ])
}

/// Σ_j (I ⊗ K_j)|φ⟩⟨φ|(I ⊗ K_j)†: the second qubit of the singlet decays.
pub fn amplitude_damped_singlet<T: Real>(p: T) -> Result<DensityMatrix<T>> {
    let kraus = amplitude_damping_kraus(p)?;
    let s = singlet::<T>();
    let id = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::zeros(4);
    for k in &kraus {
        let op = kron(&id, k);
        out = &out + &s.matrix().conjugate_by(&op);
    }
    Ok(DensityMatrix::from_trusted(out, SubsystemDims::qubits(2)))
}

/// Depolarizing channel of length `l` on qubit factor `wire`:
/// ρ ↦ e^{-αl} ρ + (1 - e^{-αl}) · (I/2)_wire ⊗ Tr_wire ρ.
pub fn apply_depolarizing_channel<T: Real>(
    rho: &DensityMatrix<T>,
    wire: usize,
    alpha: T,
    l: T,
) -> Result<DensityMatrix<T>> {
    NoiseParams::Distance { alpha, l }.validate()?;
    let dims = rho.dims();
    if wire >= dims.len() {
        return Err(Error::InvalidSubsystem {
            index: wire,
            count: dims.len(),
        });
    }
    if dims.as_slice()[wire] != 2 {
        return Err(Error::InvalidSelection(format!(
            "factor {wire} is not a qubit"
        )));
    }
    let keep = (-alpha * l).exp();
    let half_id = ComplexMatrix::identity(2).scale(T::lit(0.5));
    let mixed = if dims.len() == 1 {
        half_id
    } else {
        let rest: Vec<usize> = (0..dims.len()).filter(|&f| f != wire).collect();
        let reduced = partial_trace(rho.matrix(), dims, &rest)?;
        // I/2 ⊗ reduced, then move the fresh factor back to position `wire`.
        let joined = kron(&half_id, &reduced);
        let mut joined_dims = vec![2];
        joined_dims.extend(rest.iter().map(|&f| dims.as_slice()[f]));
        let perm: Vec<usize> = (0..dims.len())
            .map(|f| match f.cmp(&wire) {
                std::cmp::Ordering::Less => f + 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => f,
            })
            .collect();
        permute_subsystems(&joined, &SubsystemDims::new(joined_dims)?, &perm)?
    };
    let m = &rho.matrix().scale(keep) + &mixed.scale(T::one() - keep);
    Ok(DensityMatrix::from_trusted(m, dims.clone()))
}
