//! Cyclic Jacobi eigenvalue iteration for Hermitian matrices.

use num_complex::Complex;
use num_traits::Zero;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tolerance::{Tolerances, HERM_TOL};

const MAX_SWEEPS: usize = 100;
const OFF_DIAG_TOL: f64 = 1e-12;

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<T>> {
    hermitian_eigenvalues_with(m, HERM_TOL)
}

pub fn hermitian_eigenvalues_with<T: Real>(m: &ComplexMatrix<T>, herm_tol: f64) -> Result<Vec<T>> {
    let deviation = m.hermitian_deviation();
    if deviation > Tolerances::effective::<T>(herm_tol) {
        return Err(Error::NotHermitian {
            deviation: deviation.to_f64_lossy(),
        });
    }
    let n = m.dim();
    let mut a = m.hermitian_part().as_slice().to_vec();
    let scale = m.frobenius_norm().max(T::one());
    let target = Tolerances::effective::<T>(OFF_DIAG_TOL) * scale;

    let off = |a: &[Complex<T>]| {
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc = acc + a[i * n + j].norm_sqr();
                }
            }
        }
        acc.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) >= target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off: off(&a).to_f64_lossy(),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
    }

    let mut eig: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eig)
}

/// One Jacobi rotation zeroing a[p,q] (and a[q,p]).
///
/// The element is first made real by a diagonal phase on index `q`, then
/// annihilated by a real Givens rotation.
fn rotate<T: Real>(a: &mut [Complex<T>], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r.is_zero() {
        return;
    }
    // Phase step: scale row q by e^{iφ} and column q by e^{-iφ}.
    let phase = apq / r;
    for k in 0..n {
        a[q * n + k] = a[q * n + k] * phase;
        a[k * n + q] = a[k * n + q] * phase.conj();
    }
    // a[p,q] is now the real number r.
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (T::lit(2.0) * r);
    let t = {
        let sign = if theta >= T::zero() { T::one() } else { -T::one() };
        sign / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = akp * c - akq * s;
        let new_kq = akp * s + akq * c;
        a[k * n + p] = new_kp;
        a[k * n + q] = new_kq;
        a[p * n + k] = new_kp.conj();
        a[q * n + k] = new_kq.conj();
    }
    a[p * n + p] = Complex::new(app - t * r, T::zero());
    a[q * n + q] = Complex::new(aqq + t * r, T::zero());
    a[p * n + q] = Complex::zero();
    a[q * n + p] = Complex::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;

    type M = ComplexMatrix<f64>;

    #[test]
    fn diagonal_input_sorted() {
        let e = hermitian_eigenvalues(&M::diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_spectra() {
        for p in pauli::<f64>() {
            let e = hermitian_eigenvalues(&p).unwrap();
            assert!((e[0] + 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = M::identity(2);
        m[(0, 1)] = Complex::new(1.0, 0.0);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn single_entry() {
        let e = hermitian_eigenvalues(&M::diag(&[-4.5])).unwrap();
        assert_eq!(e, vec![-4.5]);
    }

    #[test]
    fn works_in_single_precision() {
        let [x, y, z] = pauli::<f32>();
        let h = &(&x + &y) + &z;
        let e = hermitian_eigenvalues(&h).unwrap();
        let r3 = 3f32.sqrt();
        assert!((e[0] + r3).abs() < 1e-5 && (e[1] - r3).abs() < 1e-5);
    }
}
