//! Random states from the Ginibre-induced ensemble.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, SubsystemDims};
use crate::quantum::DensityMatrix;
use crate::scalar::Real;

/// ρ = GG†/Tr(GG†) with G a `dim × rank` matrix of independent standard
/// complex Gaussians. Power-of-two dimensions are factored into qubits.
pub fn random_density_matrix<T: Real, R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    let dims = if dim.is_power_of_two() {
        SubsystemDims::qubits(dim.trailing_zeros() as usize)
    } else {
        SubsystemDims::new(vec![dim])?
    };
    random_density_matrix_on(dims, rank, rng)
}

/// [`random_density_matrix`] with an explicit tensor factorization.
pub fn random_density_matrix_on<T: Real, R: Rng + ?Sized>(
    dims: SubsystemDims,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    let dim = dims.total();
    if rank == 0 || rank > dim {
        return Err(Error::ParameterOutOfRange {
            name: "rank",
            value: rank as f64,
            range: "1..=dim",
        });
    }
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let g: Vec<Complex<f64>> = (0..dim * rank)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(re * half, im * half)
        })
        .collect();
    let mut m = vec![Complex::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex::new(0.0, 0.0);
            for r in 0..rank {
                acc += g[i * rank + r] * g[j * rank + r].conj();
            }
            m[i * dim + j] = acc;
        }
    }
    let trace: f64 = (0..dim).map(|i| m[i * dim + i].re).sum();
    let data = m
        .into_iter()
        .map(|z| Complex::new(T::lit(z.re / trace), T::lit(z.im / trace)))
        .collect();
    let matrix = ComplexMatrix::from_raw(dim, data).hermitian_part();
    Ok(DensityMatrix::from_trusted(matrix, dims))
}

/// Haar-random orthonormal triad: Gram–Schmidt on three Gaussian vectors.
pub fn random_triad<T: Real, R: Rng + ?Sized>(rng: &mut R) -> crate::quantum::AxisTriad<T> {
    loop {
        let mut v = [[0.0f64; 3]; 3];
        for row in v.iter_mut() {
            for e in row.iter_mut() {
                *e = rng.sample(StandardNormal);
            }
        }
        let mut ok = true;
        for i in 0..3 {
            for j in 0..i {
                let d: f64 = (0..3).map(|k| v[i][k] * v[j][k]).sum();
                for k in 0..3 {
                    v[i][k] -= d * v[j][k];
                }
            }
            let n = v[i].iter().map(|x| x * x).sum::<f64>().sqrt();
            if n < 1e-6 {
                ok = false;
                break;
            }
            v[i].iter_mut().for_each(|x| *x /= n);
        }
        if ok {
            let axes = v.map(|row| row.map(T::lit));
            if let Ok(t) = crate::quantum::AxisTriad::new(axes) {
                return t;
            }
        }
    }
}

/// Haar-random pure qubit-register state.
pub fn random_pure_state<T: Real, R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
) -> crate::quantum::PureState<T> {
    let amps: Vec<Complex<T>> = (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect();
    crate::quantum::PureState::normalized(amps).expect("nonzero Gaussian vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_one_is_pure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let r: DensityMatrix<f64> =
                random_density_matrix(4, 1, &mut rng).unwrap();
            let e = r.eigenvalues().unwrap();
            assert!((e[3] - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn valid_states_at_every_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for rank in 1..=4 {
            let r: DensityMatrix<f64> =
                random_density_matrix(4, rank, &mut rng).unwrap();
            DensityMatrix::new(r.matrix().clone(), r.dims().clone()).unwrap();
        }
    }

    #[test]
    fn rejects_bad_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_density_matrix::<f64, _>(2, 0, &mut rng).is_err());
        assert!(random_density_matrix::<f64, _>(2, 3, &mut rng).is_err());
    }

    #[test]
    fn seeded_runs_are_identical() {
        let a: DensityMatrix<f64> = random_density_matrix(
            4,
            4,
            &mut ChaCha8Rng::seed_from_u64(99),
        )
        .unwrap();
        let b: DensityMatrix<f64> = random_density_matrix(
            4,
            4,
            &mut ChaCha8Rng::seed_from_u64(99),
        )
        .unwrap();
        assert_eq!(a.matrix().as_slice(), b.matrix().as_slice());
    }

    #[test]
    fn mean_single_qubit_state_is_mixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 10_000;
        let mut acc = ComplexMatrix::<f64>::zeros(2);
        for _ in 0..n {
            let r: DensityMatrix<f64> =
                random_density_matrix(2, 2, &mut rng).unwrap();
            acc = &acc + r.matrix();
        }
        let mean = acc.scale(1.0 / f64::from(n));
        let target = ComplexMatrix::identity(2).scale(0.5);
        assert!(mean.max_abs_diff(&target) < 0.02);
    }

    #[test]
    fn random_triads_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let _t: crate::quantum::AxisTriad<f64> = random_triad(&mut rng);
        }
    }
}
