#![allow(dead_code)]

use netsteer::linalg::{ComplexMatrix, SubsystemDims};
use netsteer::network::{Scenario3, Scenario4};
use netsteer::quantum::{ejm_basis, DensityMatrix};
use netsteer::sampling::{random_density_matrix, random_density_matrix_on, random_triad};
use netsteer::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix<f64> {
    let rank = rng.random_range(1..=dim);
    random_density_matrix(dim, rank, rng).unwrap()
}

pub fn random_scenario3(rng: &mut ChaCha8Rng) -> Scenario3<f64> {
    let theta = rng.random_range(0.0..std::f64::consts::PI);
    Scenario3::new(
        random_state(rng, 4),
        random_state(rng, 4),
        ejm_basis(theta),
        random_triad(rng),
        random_triad(rng),
    )
    .unwrap()
}

pub fn random_scenario4(rng: &mut ChaCha8Rng) -> Scenario4<f64> {
    let tc = rng.random_range(0.0..std::f64::consts::PI);
    let td = rng.random_range(0.0..std::f64::consts::PI);
    Scenario4::new(
        random_state(rng, 4),
        random_state(rng, 4),
        random_state(rng, 4),
        ejm_basis(tc),
        ejm_basis(td),
        random_triad(rng),
        random_triad(rng),
    )
    .unwrap()
}

fn product_source(rng: &mut ChaCha8Rng) -> DensityMatrix<f64> {
    random_state(rng, 2).tensor(&random_state(rng, 2))
}

pub fn random_product_scenario3(rng: &mut ChaCha8Rng) -> Scenario3<f64> {
    let theta = rng.random_range(0.0..std::f64::consts::PI);
    Scenario3::new(
        product_source(rng),
        product_source(rng),
        ejm_basis(theta),
        random_triad(rng),
        random_triad(rng),
    )
    .unwrap()
}

pub fn random_product_scenario4(rng: &mut ChaCha8Rng) -> Scenario4<f64> {
    let tc = rng.random_range(0.0..std::f64::consts::PI);
    let td = rng.random_range(0.0..std::f64::consts::PI);
    Scenario4::new(
        product_source(rng),
        product_source(rng),
        product_source(rng),
        ejm_basis(tc),
        ejm_basis(td),
        random_triad(rng),
        random_triad(rng),
    )
    .unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix<f64> {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = Complex::new(rng.random_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Householder reduction of a Hermitian matrix to tridiagonal form; returns
/// the real diagonal and the moduli of the off-diagonal.
fn tridiagonalize(m: &ComplexMatrix<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim();
    let mut a: Vec<Vec<Complex>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[k + 1][k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex::new(1.0, 0.0) };
        let mut v: Vec<Complex> = vec![Complex::new(0.0, 0.0); n];
        for i in k + 1..n {
            v[i] = a[i][k];
        }
        v[k + 1] += phase * norm;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= vn);
        // A <- H A H with H = I - 2 v v†
        let av: Vec<Complex> = (0..n).map(|i| (0..n).map(|j| a[i][j] * v[j]).sum()).collect();
        let vav: Complex = (0..n).map(|i| v[i].conj() * av[i]).sum();
        for i in 0..n {
            for j in 0..n {
                let t = av[i] * v[j].conj() + v[i] * av[j].conj()
                    - v[i] * v[j].conj() * vav * 2.0;
                a[i][j] -= t * 2.0;
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i].re).collect();
    let off = (0..n.saturating_sub(1)).map(|i| a[i + 1][i].norm()).collect();
    (diag, off)
}

/// Sturm count: eigenvalues of the tridiagonal matrix below `x`.
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { b2 / q };
        if q == 0.0 {
            q = -1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of a Hermitian matrix as roots of its characteristic
/// polynomial, located by Sturm-sequence bisection.
pub fn eigenvalues_by_bisection(m: &ComplexMatrix<f64>) -> Vec<f64> {
    let (diag, off) = tridiagonalize(m);
    let n = diag.len();
    let bound = (0..n)
        .map(|i| {
            diag[i].abs()
                + if i > 0 { off[i - 1] } else { 0.0 }
                + if i + 1 < n { off[i] } else { 0.0 }
        })
        .fold(0.0, f64::max)
        + 1.0;
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-bound, bound);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(&diag, &off, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Partial trace by explicit multi-index enumeration.
pub fn brute_partial_trace(
    m: &ComplexMatrix<f64>,
    dims: &[usize],
    keep: &[usize],
) -> ComplexMatrix<f64> {
    let digits = |mut idx: usize| {
        let mut d = vec![0; dims.len()];
        for f in (0..dims.len()).rev() {
            d[f] = idx % dims[f];
            idx /= dims[f];
        }
        d
    };
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let kept_index = |d: &[usize]| keep.iter().fold(0, |acc, &k| acc * dims[k] + d[k]);
    let mut out = ComplexMatrix::zeros(kept_dim);
    let n = m.dim();
    for r in 0..n {
        let dr = digits(r);
        for c in 0..n {
            let dc = digits(c);
            let traced_match = (0..dims.len())
                .filter(|f| !keep.contains(f))
                .all(|f| dr[f] == dc[f]);
            if traced_match {
                let (i, j) = (kept_index(&dr), kept_index(&dc));
                out[(i, j)] += m[(r, c)];
            }
        }
    }
    out
}

pub fn dims(n: usize) -> SubsystemDims {
    SubsystemDims::qubits(n)
}

pub fn random_density_on(rng: &mut ChaCha8Rng, dims: SubsystemDims) -> DensityMatrix<f64> {
    let rank = rng.random_range(1..=dims.total());
    random_density_matrix_on(dims, rank, rng).unwrap()
}
