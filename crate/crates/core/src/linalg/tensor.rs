//! Tensor-product structure: Kronecker products, partial traces and
//! transposes, and reordering of tensor factors.
//!
//! A matrix on `d_0 ⊗ d_1 ⊗ … ⊗ d_{n-1}` uses row-major multi-indices, so
//! factor 0 is the most significant digit.

use num_complex::Complex;
use num_traits::Zero;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Ordered tensor factor dimensions of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemDims(Vec<usize>);

impl SubsystemDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::BadSubsystemDims { dims, dim: 0 });
        }
        Ok(Self(dims))
    }

    /// `n` qubit factors.
    pub fn qubits(n: usize) -> Self {
        Self(vec![2; n.max(1)])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn check(&self, dim: usize) -> Result<()> {
        if self.total() == dim {
            Ok(())
        } else {
            Err(Error::BadSubsystemDims {
                dims: self.0.clone(),
                dim,
            })
        }
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.0.len() {
            Ok(())
        } else {
            Err(Error::InvalidSubsystem {
                index,
                count: self.0.len(),
            })
        }
    }

    /// (size of factors before `f`, size of factor `f`, size of factors after `f`).
    fn split(&self, f: usize) -> (usize, usize, usize) {
        let hi = self.0[..f].iter().product();
        let lo = self.0[f + 1..].iter().product();
        (hi, self.0[f], lo)
    }

    pub fn without(&self, f: usize) -> Self {
        let mut d = self.0.clone();
        d.remove(f);
        Self(d)
    }

    /// Adjacent factors `start..end` merged into one.
    pub fn merge(&self, start: usize, end: usize) -> Self {
        let mut d = self.0[..start].to_vec();
        d.push(self.0[start..end].iter().product());
        d.extend_from_slice(&self.0[end..]);
        Self(d)
    }
}

pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut data = vec![Complex::zero(); n * n];
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij.is_zero() {
                continue;
            }
            for k in 0..db {
                let row = (i * db + k) * n + j * db;
                for l in 0..db {
                    data[row + l] = aij * b[(k, l)];
                }
            }
        }
    }
    ComplexMatrix::from_raw(n, data)
}

/// Tr_f[(op ⊗ 1) m]: contracts factor `f` of `m` against `op` and returns the
/// operator left on the remaining factors.
///
/// With `op = 1` this is the partial trace over `f`; with a projector it is the
/// unnormalized post-measurement operator.
pub fn contract_factor<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &SubsystemDims,
    f: usize,
    op: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    dims.check(m.dim())?;
    dims.check_index(f)?;
    let (hi, df, lo) = dims.split(f);
    if op.dim() != df {
        return Err(Error::DimensionMismatch {
            expected: df,
            actual: op.dim(),
        });
    }
    let n = m.dim();
    let r = hi * lo;
    let src = m.as_slice();
    let mut out = vec![Complex::zero(); r * r];
    // Full index of (rest index, factor digit).
    let full = |rest: usize, d: usize| (rest / lo) * df * lo + d * lo + rest % lo;
    for i in 0..df {
        for j in 0..df {
            // (op ⊗ 1) m traced over f picks op[j,i] · m[(i,·),(j,·)]
            let w = op[(j, i)];
            if w.is_zero() {
                continue;
            }
            for rr in 0..r {
                let row = full(rr, i) * n;
                let orow = &mut out[rr * r..(rr + 1) * r];
                for (ss, o) in orow.iter_mut().enumerate() {
                    *o = *o + w * src[row + full(ss, j)];
                }
            }
        }
    }
    Ok(ComplexMatrix::from_raw(r, out))
}

/// Traces out every factor not listed in `keep`. Kept factors stay in their
/// original relative order.
pub fn partial_trace<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &SubsystemDims,
    keep: &[usize],
) -> Result<ComplexMatrix<T>> {
    dims.check(m.dim())?;
    if keep.is_empty() {
        return Err(Error::InvalidSelection("nothing to keep".into()));
    }
    for &k in keep {
        dims.check_index(k)?;
    }
    for (i, k) in keep.iter().enumerate() {
        if keep[..i].contains(k) {
            return Err(Error::InvalidSelection(format!("factor {k} listed twice")));
        }
    }
    let mut out = m.clone();
    let mut cur = dims.clone();
    for f in (0..dims.len()).rev() {
        if keep.contains(&f) {
            continue;
        }
        let id = ComplexMatrix::identity(cur.as_slice()[f]);
        out = contract_factor(&out, &cur, f, &id)?;
        cur = cur.without(f);
    }
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    if sorted != keep {
        // keep lists factors out of order: reorder the survivors accordingly
        let perm: Vec<usize> = keep
            .iter()
            .map(|k| sorted.iter().position(|s| s == k).unwrap())
            .collect();
        out = permute_subsystems(&out, &cur, &perm)?;
    }
    Ok(out)
}

/// Transposes the indices of factor `f` only.
pub fn partial_transpose<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &SubsystemDims,
    f: usize,
) -> Result<ComplexMatrix<T>> {
    dims.check(m.dim())?;
    dims.check_index(f)?;
    let (_, df, lo) = dims.split(f);
    let n = m.dim();
    let digit = |idx: usize| (idx / lo) % df;
    let with_digit = |idx: usize, d: usize| idx - digit(idx) * lo + d * lo;
    let mut out = vec![Complex::zero(); n * n];
    for row in 0..n {
        for col in 0..n {
            let (i, j) = (digit(row), digit(col));
            out[row * n + col] = m[(with_digit(row, j), with_digit(col, i))];
        }
    }
    Ok(ComplexMatrix::from_raw(n, out))
}

/// Reorders tensor factors: output factor `k` is input factor `perm[k]`.
pub fn permute_subsystems<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &SubsystemDims,
    perm: &[usize],
) -> Result<ComplexMatrix<T>> {
    dims.check(m.dim())?;
    let n_f = dims.len();
    let mut seen = vec![false; n_f];
    if perm.len() != n_f || perm.iter().any(|&p| p >= n_f || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::InvalidPermutation(perm.to_vec()));
    }
    let d = dims.as_slice();
    let out_dims: Vec<usize> = perm.iter().map(|&p| d[p]).collect();
    let mut in_stride = vec![1usize; n_f];
    for k in (0..n_f.saturating_sub(1)).rev() {
        in_stride[k] = in_stride[k + 1] * d[k + 1];
    }
    let n = m.dim();
    // map[out index] = in index
    let map: Vec<usize> = (0..n)
        .map(|mut o| {
            let mut idx = 0;
            for k in (0..n_f).rev() {
                let digit = o % out_dims[k];
                o /= out_dims[k];
                idx += digit * in_stride[perm[k]];
            }
            idx
        })
        .collect();
    let mut out = Vec::with_capacity(n * n);
    for &r in &map {
        for &c in &map {
            out.push(m[(r, c)]);
        }
    }
    Ok(ComplexMatrix::from_raw(n, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;

    type M = ComplexMatrix<f64>;

    fn ket(bits: &[f64]) -> Vec<Complex<f64>> {
        bits.iter().map(|&b| Complex::new(b, 0.0)).collect()
    }

    fn singlet() -> M {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        M::projector(&ket(&[0.0, s, -s, 0.0]))
    }

    #[test]
    fn kron_examples() {
        let i2 = M::identity(2);
        assert_eq!(kron(&i2, &i2), M::identity(4));
        let z = &pauli::<f64>()[2];
        assert_eq!(kron(z, z), M::diag(&[1.0, -1.0, -1.0, 1.0]));
        let p0 = M::projector(&ket(&[1.0, 0.0]));
        let p1 = M::projector(&ket(&[0.0, 1.0]));
        assert_eq!(kron(&p0, &p1), M::projector(&ket(&[0.0, 1.0, 0.0, 0.0])));
    }

    #[test]
    fn kron_index_law() {
        let [x, y, _] = pauli::<f64>();
        let a = &x + &y.scale(0.5);
        let b = &M::identity(3).scale(2.0) + &M::diag(&[1.0, -2.0, 0.5]);
        let k = kron(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..3 {
                    for q in 0..3 {
                        assert_eq!(k[(i * 3 + p, j * 3 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_trace_of_product_and_singlet() {
        let [x, _, z] = pauli::<f64>();
        let rho = &(&M::identity(2) + &x.scale(0.3)).scale(0.5) + &z.scale(0.1);
        let sigma = M::diag(&[0.2, 0.3, 0.5]);
        let prod = kron(&rho, &sigma);
        let dims = SubsystemDims::new(vec![2, 3]).unwrap();
        let r = partial_trace(&prod, &dims, &[0]).unwrap();
        assert!(r.max_abs_diff(&rho.scale(sigma.trace().re)) < 1e-15);
        let s = partial_trace(&prod, &dims, &[1]).unwrap();
        assert!(s.max_abs_diff(&sigma.scale(rho.trace().re)) < 1e-15);

        let red = partial_trace(&singlet(), &SubsystemDims::qubits(2), &[0]).unwrap();
        assert!(red.max_abs_diff(&M::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_selection() {
        let dims = SubsystemDims::qubits(2);
        let m = singlet();
        assert!(partial_trace(&m, &dims, &[]).is_err());
        assert!(partial_trace(&m, &dims, &[2]).is_err());
        assert!(partial_trace(&m, &dims, &[0, 0]).is_err());
        assert!(partial_trace(&m, &SubsystemDims::qubits(3), &[0]).is_err());
    }

    #[test]
    fn partial_trace_out_of_order_keep() {
        let a = M::diag(&[0.9, 0.1]);
        let b = M::diag(&[0.25, 0.75]);
        let c = M::diag(&[0.5, 0.5]);
        let abc = kron(&kron(&a, &b), &c);
        let r = partial_trace(&abc, &SubsystemDims::qubits(3), &[1, 0]).unwrap();
        assert!(r.max_abs_diff(&kron(&b, &a)) < 1e-15);
    }

    #[test]
    fn partial_transpose_involution_and_product() {
        let [x, y, z] = pauli::<f64>();
        let rho = &(&M::identity(2) + &y.scale(0.4)).scale(0.5) + &x.scale(0.1);
        let sigma = &(&M::identity(2) + &y.scale(-0.6)).scale(0.5) + &z.scale(0.2);
        let dims = SubsystemDims::qubits(2);
        let prod = kron(&rho, &sigma);
        let pt = partial_transpose(&prod, &dims, 1).unwrap();
        assert!(pt.max_abs_diff(&kron(&rho, &sigma.transpose())) < 1e-15);
        let back = partial_transpose(&pt, &dims, 1).unwrap();
        assert_eq!(back, prod);
        assert!(partial_transpose(&prod, &dims, 2).is_err());
    }

    #[test]
    fn permute_examples() {
        let a = M::diag(&[0.9, 0.1]);
        let b = M::diag(&[0.2, 0.3, 0.5]);
        let dims = SubsystemDims::new(vec![2, 3]).unwrap();
        let ab = kron(&a, &b);
        assert_eq!(permute_subsystems(&ab, &dims, &[0, 1]).unwrap(), ab);
        let ba = permute_subsystems(&ab, &dims, &[1, 0]).unwrap();
        assert_eq!(ba, kron(&b, &a));
        let back =
            permute_subsystems(&ba, &SubsystemDims::new(vec![3, 2]).unwrap(), &[1, 0]).unwrap();
        assert_eq!(back, ab);
        assert!(permute_subsystems(&ab, &dims, &[0, 0]).is_err());
        assert!(permute_subsystems(&ab, &dims, &[0]).is_err());
        assert!(permute_subsystems(&ab, &dims, &[0, 2]).is_err());
    }

    #[test]
    fn contract_factor_with_observable() {
        // Tr_A[(σ_z ⊗ 1) |0⟩⟨0| ⊗ ρ] = ρ
        let p0 = M::projector(&ket(&[1.0, 0.0]));
        let rho = M::diag(&[0.3, 0.7]);
        let z = &pauli::<f64>()[2];
        let r = contract_factor(&kron(&p0, &rho), &SubsystemDims::qubits(2), 0, z).unwrap();
        assert!(r.max_abs_diff(&rho) < 1e-15);
        let r = contract_factor(&kron(&rho, &p0), &SubsystemDims::qubits(2), 1, z).unwrap();
        assert!(r.max_abs_diff(&rho) < 1e-15);
    }
}
