//! Library routines checked against independent brute-force implementations.

mod common;

use common::*;
use netsteer::channels::singlet;
use netsteer::linalg::{hermitian_eigenvalues, kron, partial_trace, partial_transpose, ComplexMatrix};
use netsteer::network::{conditional_states, global_state3, Scenario3};
use netsteer::quantum::DensityMatrix;
use netsteer::witnesses::ppt_min_eigenvalue;
use netsteer::Complex;
use std::f64::consts::FRAC_PI_2;

#[test]
fn jacobi_matches_sturm_bisection_on_random_8x8() {
    let mut rng = rng(11);
    for _ in 0..20 {
        let m = random_hermitian(&mut rng, 8);
        let jacobi = hermitian_eigenvalues(&m).unwrap();
        let oracle = eigenvalues_by_bisection(&m);
        for (a, b) in jacobi.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "{jacobi:?} vs {oracle:?}");
        }
        let sum: f64 = jacobi.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-9);
    }
}

#[test]
fn jacobi_matches_oracle_up_to_dim_64() {
    let mut rng = rng(12);
    for n in [16, 32, 64] {
        let m = random_hermitian(&mut rng, n);
        let jacobi = hermitian_eigenvalues(&m).unwrap();
        let oracle = eigenvalues_by_bisection(&m);
        for (a, b) in jacobi.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10, "dim {n}: {a} vs {b}");
        }
    }
}

#[test]
fn printed_conditional_state_spectrum_matches_oracle() {
    // First printed conditional state of the PPT-blind example, as given.
    let rows = [
        [(0.1405, 0.0), (-0.1411, -0.0764), (-0.0723, -0.0556), (0.0546, 0.0921)],
        [(-0.1411, 0.0764), (0.3227, 0.0), (0.1063, 0.0066), (-0.1932, -0.0774)],
        [(-0.0723, 0.0556), (0.1063, -0.0066), (0.1510, 0.0), (-0.1674, -0.0203)],
        [(0.0546, -0.0921), (-0.1932, 0.0774), (-0.1674, 0.0203), (0.3858, 0.0)],
    ];
    let m = ComplexMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(re, im)| Complex::new(re, im)).collect())
            .collect(),
    )
    .unwrap();
    let jacobi = hermitian_eigenvalues(&m).unwrap();
    let oracle = eigenvalues_by_bisection(&m);
    for (a, b) in jacobi.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn partial_trace_matches_brute_force() {
    let mut rng = rng(13);
    for _ in 0..10 {
        let rho = random_density_on(&mut rng, dims(4));
        for keep in [vec![0, 1], vec![0, 3], vec![2, 1], vec![3], vec![1, 2, 3]] {
            let fast = partial_trace(rho.matrix(), rho.dims(), &keep).unwrap();
            let slow = brute_partial_trace(rho.matrix(), &[2, 2, 2, 2], &keep);
            assert!(fast.max_abs_diff(&slow) < 1e-14, "keep {keep:?}");
            assert!((fast.trace().re - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn singlet_partial_transpose_spectrum() {
    let pt = partial_transpose(singlet::<f64>().matrix(), &dims(2), 1).unwrap();
    let mut e = eigenvalues_by_bisection(&pt);
    e.sort_by(f64::total_cmp);
    for (a, b) in e.iter().zip([-0.5, 0.5, 0.5, 0.5]) {
        assert!((a - b).abs() < 1e-10);
    }
    assert!((ppt_min_eigenvalue(&singlet::<f64>()).unwrap() + 0.5).abs() < 1e-10);
}

#[test]
fn swapping_matches_explicit_projection() {
    // Brute force: project the 16x16 global state onto each relay outcome by a
    // full-size operator product, then trace out the relay by enumeration.
    let s = Scenario3::pauli(singlet(), singlet(), FRAC_PI_2).unwrap();
    let global = global_state3(&s);
    let asm = conditional_states(&s).unwrap();
    let id2 = ComplexMatrix::identity(2);
    for c in 1..=4 {
        let op = kron(&kron(&id2, &s.ejm.projector(c)), &id2);
        let projected = op.matmul(global.matrix()).matmul(&op);
        let reduced = brute_partial_trace(&projected, &[2, 2, 2, 2], &[0, 3]);
        let p = reduced.trace().re;
        assert!((p - 0.25).abs() < 1e-12);
        let state = asm.outcome(c).state.as_ref().unwrap();
        assert!(state.matrix().max_abs_diff(&reduced.scale(1.0 / p)) < 1e-12);
        let d = DensityMatrix::new(state.matrix().clone(), dims(2)).unwrap();
        assert!((d.purity() - 1.0).abs() < 1e-10);
    }
}
