//! Generalized elegant joint measurements.
//!
//! Outcome `c` (1..=4) of the measurement is labelled by the tetrahedron vertex
//! `m_c`, and the component `c^k` of that vertex is what the relay reports for
//! observable `C^k`.

use num_complex::Complex;

use super::state::{Observable, PureState};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// Tetrahedron vertices m_1..m_4, in outcome order.
pub const TETRA_VERTICES: [[i8; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

pub fn tetra_vertices() -> [[i8; 3]; 4] {
    TETRA_VERTICES
}

/// Qubit state with Bloch vector `sign · m_c / √3`.
///
/// Cylindrical coordinates m_c = √3(√(1-η²)cos φ, √(1-η²)sin φ, η) with
/// φ = atan2(m_y, m_x). The half-angle phase e^{∓iφ/2} sits on |0⟩/|1⟩ so the
/// Bloch vector points along +m_c (not its mirror image in y). A different
/// branch of φ only changes the global phase.
pub fn bloch_pure_state<T: Real>(c: usize, sign: i8) -> Result<PureState<T>> {
    let m = vertex(c)?;
    let sqrt3 = T::lit(3.0).sqrt();
    let eta = T::lit(f64::from(m[2])) / sqrt3;
    let phi = T::lit(f64::from(m[1])).atan2(T::lit(f64::from(m[0])));
    let half = T::lit(0.5);
    let up = ((T::one() + eta) * half).sqrt();
    let down = ((T::one() - eta) * half).sqrt();
    let e_minus = Complex::from_polar(T::one(), -phi * half);
    let e_plus = Complex::from_polar(T::one(), phi * half);
    let amps = if sign >= 0 {
        vec![e_minus * up, e_plus * down]
    } else {
        vec![e_minus * down, -(e_plus * up)]
    };
    Ok(PureState::from_raw(amps))
}

fn vertex(c: usize) -> Result<[i8; 3]> {
    if (1..=4).contains(&c) {
        Ok(TETRA_VERTICES[c - 1])
    } else {
        Err(Error::ParameterOutOfRange {
            name: "outcome",
            value: c as f64,
            range: "1..=4",
        })
    }
}

/// Four-outcome two-qubit measurement parametrized by θ.
#[derive(Debug, Clone, PartialEq)]
pub struct EjmBasis<T> {
    theta: T,
    states: [PureState<T>; 4],
    components: [Observable<T>; 3],
}

impl<T: Real> EjmBasis<T> {
    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn states(&self) -> &[PureState<T>; 4] {
        &self.states
    }

    /// |Φ_c⟩ for c in 1..=4.
    pub fn state(&self, c: usize) -> &PureState<T> {
        &self.states[c - 1]
    }

    pub fn outcome_vectors(&self) -> [[i8; 3]; 4] {
        TETRA_VERTICES
    }

    /// C^k for k in 1..=3.
    pub fn component(&self, k: usize) -> &Observable<T> {
        &self.components[k - 1]
    }

    pub fn components(&self) -> &[Observable<T>; 3] {
        &self.components
    }

    pub fn projector(&self, c: usize) -> ComplexMatrix<T> {
        self.states[c - 1].projector()
    }
}

/// |Φ_c^θ⟩ = ((√3+e^{iθ})/2√2)|m_c,-m_c⟩ + ((√3-e^{iθ})/2√2)|-m_c,m_c⟩.
pub fn ejm_basis<T: Real>(theta: T) -> EjmBasis<T> {
    let sqrt3 = T::lit(3.0).sqrt();
    let denom = T::lit(2.0 * std::f64::consts::SQRT_2);
    let phase = Complex::from_polar(T::one(), theta);
    let w_plus = (phase + sqrt3) / denom;
    let w_minus = (-phase + sqrt3) / denom;

    let states = [1, 2, 3, 4].map(|c| {
        let plus = bloch_pure_state::<T>(c, 1).expect("valid vertex");
        let minus = bloch_pure_state::<T>(c, -1).expect("valid vertex");
        let a = plus.tensor(&minus);
        let b = minus.tensor(&plus);
        let amps = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| x * w_plus + y * w_minus)
            .collect();
        PureState::from_raw(amps)
    });
    let projectors: Vec<ComplexMatrix<T>> = states.iter().map(|s| s.projector()).collect();
    let components = [0usize, 1, 2].map(|k| {
        let mut acc = ComplexMatrix::zeros(4);
        for (c, p) in projectors.iter().enumerate() {
            let sign = T::lit(f64::from(TETRA_VERTICES[c][k]));
            acc = &acc + &p.scale(sign);
        }
        Observable::from_trusted(acc)
    });
    EjmBasis {
        theta,
        states,
        components,
    }
}

/// C^k = Σ_c c^k |Φ_c⟩⟨Φ_c| for k in 1..=3.
pub fn ejm_component_observable<T: Real>(basis: &EjmBasis<T>, k: usize) -> Result<Observable<T>> {
    if !(1..=3).contains(&k) {
        return Err(Error::ParameterOutOfRange {
            name: "component",
            value: k as f64,
            range: "1..=3",
        });
    }
    Ok(basis.component(k).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn vertices() {
        let v = tetra_vertices();
        assert_eq!(v[0], [1, 1, 1]);
        assert_eq!(v[3], [-1, -1, 1]);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let dot: i8 = (0..3).map(|k| v[i][k] * v[j][k]).sum();
                    assert_eq!(dot, -1);
                }
            }
        }
        for k in 0..3 {
            assert_eq!(v.iter().map(|m| m[k]).sum::<i8>(), 0);
        }
    }

    #[test]
    fn bloch_states() {
        let s3 = 3f64.sqrt();
        for c in 1..=4 {
            let p = bloch_pure_state::<f64>(c, 1).unwrap();
            let m = bloch_pure_state::<f64>(c, -1).unwrap();
            assert!(p.inner(&m).norm() < 1e-15);
            assert!((p.inner(&p).re - 1.0).abs() < 1e-15);
            let v = TETRA_VERTICES[c - 1];
            let (bp, bm) = (p.bloch_vector(), m.bloch_vector());
            for k in 0..3 {
                assert!((bp[k] - f64::from(v[k]) / s3).abs() < 1e-12);
                assert!((bm[k] + f64::from(v[k]) / s3).abs() < 1e-12);
            }
        }
        assert!(bloch_pure_state::<f64>(0, 1).is_err());
        assert!(bloch_pure_state::<f64>(5, 1).is_err());
    }

    #[test]
    fn component_observables() {
        for theta in [0.0, 0.4, FRAC_PI_2] {
            let b = ejm_basis(theta);
            let id = ComplexMatrix::<f64>::identity(4);
            let mut triple = id.clone();
            for k in 1..=3 {
                let ck = ejm_component_observable(&b, k).unwrap();
                let m = ck.matrix();
                assert!(m.trace().norm() < 1e-12);
                assert!(m.matmul(m).max_abs_diff(&id) < 1e-10);
                let e = hermitian_eigenvalues(m).unwrap();
                assert!(e.iter().all(|x| (x.abs() - 1.0).abs() < 1e-10));
                triple = triple.matmul(m);
            }
            assert!((triple.trace().re - 4.0).abs() < 1e-10);
        }
        assert!(ejm_component_observable(&ejm_basis(0.0), 4).is_err());
    }

    #[test]
    fn theta_zero_is_orthonormal_with_vertex_outcomes() {
        let b = ejm_basis(0.0f64);
        for i in 1..=4 {
            for j in 1..=4 {
                let g = b.state(i).inner(b.state(j));
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((g - Complex::new(target, 0.0)).norm() < 1e-10);
            }
        }
        assert_eq!(b.outcome_vectors(), TETRA_VERTICES);
    }

    #[test]
    fn theta_half_pi_is_local_unitary_bell_measurement() {
        // U = exp(-i (2π/3) n·σ), n = (1,1,1)/√3, on the second qubit. With
        // the phase convention of `bloch_pure_state` this is the adjoint of
        // the rotation that would act under the opposite y-orientation.
        let alpha = 2.0 * std::f64::consts::PI / 3.0;
        let n = 1.0 / 3f64.sqrt();
        let [x, y, z] = crate::linalg::pauli::<f64>();
        let ns = (&(&x + &y) + &z).scale(n);
        let u = &ComplexMatrix::identity(2).scale(alpha.cos())
            + &ns.scale_complex(Complex::new(0.0, -alpha.sin()));
        let one_u = crate::linalg::kron(&ComplexMatrix::identity(2), &u);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bells: [[f64; 4]; 4] = [[h, 0.0, 0.0, h], [h, 0.0, 0.0, -h], [0.0, h, h, 0.0], [0.0, h, -h, 0.0]];
        let b = ejm_basis(FRAC_PI_2);
        for c in 1..=4 {
            let best = bells
                .iter()
                .map(|bell| {
                    let v: Vec<Complex<f64>> = bell.iter().map(|&r| Complex::new(r, 0.0)).collect();
                    let rotated = PureState::from_raw(one_u.apply(&v));
                    rotated.inner(b.state(c)).norm()
                })
                .fold(0.0, f64::max);
            assert!((best - 1.0).abs() < 1e-10, "outcome {c}: overlap {best}");
        }
    }
}
