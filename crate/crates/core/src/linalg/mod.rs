//! Dense complex linear algebra for multi-qubit operators.
//!
//! Matrices are square, row-major and small (dimension at most 64), so there
//! is no sparsity and no blocking.

mod eigen;
mod tensor;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use eigen::{hermitian_eigenvalues, hermitian_eigenvalues_with};
pub use tensor::{
    contract_factor, kron, partial_trace, partial_transpose, permute_subsystems, SubsystemDims,
};

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries, rejecting non-square shapes and
    /// non-finite values.
    pub fn new(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::NotSquare {
                dim,
                len: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    dim,
                    len: row.len() * dim,
                });
            }
            data.extend(row);
        }
        Self::new(dim, data)
    }

    /// Real matrix from row-major `f64` entries. Panics on a non-square slice;
    /// meant for literal constants.
    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "from_real: wrong entry count");
        Self {
            dim,
            data: entries
                .iter()
                .map(|&x| Complex::new(T::lit(x), T::zero()))
                .collect(),
        }
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex::one();
        }
        m
    }

    pub fn diag(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(v, T::zero());
        }
        m
    }

    /// |ψ⟩⟨φ|.
    pub fn outer(ket: &[Complex<T>], bra: &[Complex<T>]) -> Self {
        assert_eq!(ket.len(), bra.len());
        let dim = ket.len();
        let mut data = Vec::with_capacity(dim * dim);
        for a in ket {
            for b in bra {
                data.push(a * b.conj());
            }
        }
        Self { dim, data }
    }

    pub fn projector(ket: &[Complex<T>]) -> Self {
        Self::outer(ket, ket)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self.data[i * self.dim + i])
    }

    /// Tr(self · other) without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim, other.dim, "trace_product: dimension mismatch");
        let n = self.dim;
        let mut acc = Complex::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + self.data[i * n + j] * other.data[j * n + i];
            }
        }
        acc
    }

    /// ⟨ψ|self|ψ⟩.
    pub fn sandwich(&self, ket: &[Complex<T>]) -> Complex<T> {
        assert_eq!(ket.len(), self.dim);
        let mut acc = Complex::zero();
        for (i, bra) in ket.iter().enumerate() {
            let row = self.row(i);
            let inner = row
                .iter()
                .zip(ket)
                .fold(Complex::zero(), |a, (m, k)| a + m * k);
            acc = acc + bra.conj() * inner;
        }
        acc
    }

    pub fn apply(&self, ket: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(ket.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(ket)
                    .fold(Complex::zero(), |a, (m, k)| a + m * k)
            })
            .collect()
    }

    pub fn scale(&self, s: T) -> Self {
        self.scale_complex(Complex::new(s, T::zero()))
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul: dimension mismatch");
        let n = self.dim;
        let mut out = vec![Complex::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                let orow = &mut out[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o = *o + a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    /// A · self · A†.
    pub fn conjugate_by(&self, a: &Self) -> Self {
        a.matmul(self).matmul(&a.adjoint())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    /// Largest entrywise |m - m†|.
    pub fn hermitian_deviation(&self) -> T {
        let n = self.dim;
        let mut dev = T::zero();
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> T {
        let n = self.dim;
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc = acc + self.data[i * n + j].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// Hermitian part (m + m†)/2, used to scrub rounding noise.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        let adj = self.adjoint();
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&adj.data)
                .map(|(a, b)| (a + b) * half)
                .collect(),
        }
    }

    /// Converts the scalar type of every entry.
    pub fn cast<U: Real>(&self) -> ComplexMatrix<U> {
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(U::lit(z.re.to_f64_lossy()), U::lit(z.im.to_f64_lossy())))
                .collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "add: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "sub: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:+.4?}{:+.4?}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices σ_x, σ_y, σ_z.
pub fn pauli<T: Real>() -> [ComplexMatrix<T>; 3] {
    let o = Complex::zero();
    let one = Complex::one();
    let i = Complex::new(T::zero(), T::one());
    [
        ComplexMatrix::from_raw(2, vec![o, one, one, o]),
        ComplexMatrix::from_raw(2, vec![o, -i, i, o]),
        ComplexMatrix::from_raw(2, vec![one, o, o, -one]),
    ]
}
