//! Bilinear operations stored as structure constants.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::{axpy, Scalar};
use crate::error::{dim_check, Result};

/// `c[i][j][k]` with `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

/// Nonzero entries of a [`Tensor3`], grouped by input pair `(i, j)`.
#[derive(Clone, Debug)]
pub struct SparseRows {
    n: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseRows {
    #[inline]
    pub fn row(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.rows[i * self.n + j]
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, data: vec![Scalar::zero(); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let x = self.idx(i, j, k);
        self.data[x] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, k: usize, v: &Scalar) {
        let x = self.idx(i, j, k);
        self.data[x] += v;
    }

    /// The output vector `e_i * e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let s = self.idx(i, j, 0);
        &self.data[s..s + self.n]
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: &[Scalar]) {
        let s = self.idx(i, j, 0);
        self.data[s..s + self.n].clone_from_slice(v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries as `(i, j, k, value)`, in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let n = self.n;
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(x, v)| (x / (n * n), (x / n) % n, x % n, v))
    }

    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Result<Self> {
        let mut t = Tensor3::zeros(n);
        for (i, j, k, v) in entries {
            if i >= n || j >= n || k >= n {
                return Err(crate::Error::Dimension(format!("entry ({i},{j},{k}) out of range for dim {n}")));
            }
            t.add_at(i, j, k, &v);
        }
        Ok(t)
    }

    /// Builds the tensor of `(x, y) -> f(e_i, e_j)` from basis products.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Vec<Scalar>) -> Self {
        let mut t = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                debug_assert_eq!(v.len(), n);
                t.set_product(i, j, &v);
            }
        }
        t
    }

    pub fn sparse_rows(&self) -> SparseRows {
        let n = self.n;
        let mut rows = Vec::with_capacity(n * n);
        for ij in 0..n * n {
            let s = ij * n;
            rows.push(
                self.data[s..s + n]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (k, v.clone()))
                    .collect(),
            );
        }
        SparseRows { n, rows }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor3 {
        Tensor3 { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Tensor3) -> Result<Tensor3> {
        op_combine(&[(Scalar::one(), self), (Scalar::one(), other)])
    }

    pub fn sub(&self, other: &Tensor3) -> Result<Tensor3> {
        op_combine(&[(Scalar::one(), self), (Scalar::from_int(-1), other)])
    }

    /// `x op^op y := y op x`.
    pub fn opposite(&self) -> Tensor3 {
        let mut t = Tensor3::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set_product(i, j, self.product_of_basis(j, i));
            }
        }
        t
    }

    /// `(x, y) -> f(x) op y` for a linear map `f`.
    pub fn precompose_left(&self, f: &Matrix) -> Result<Tensor3> {
        dim_check("operator size", self.n, f.rows())?;
        let n = self.n;
        let mut t = Tensor3::zeros(n);
        for i in 0..n {
            for p in 0..n {
                let c = f.get(p, i);
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    for k in 0..n {
                        let v = self.get(p, j, k);
                        if !v.is_zero() {
                            t.add_at(i, j, k, &(c * v));
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    /// `(x, y) -> x op f(y)`.
    pub fn precompose_right(&self, f: &Matrix) -> Result<Tensor3> {
        Ok(self.opposite().precompose_left(f)?.opposite())
    }

    /// Tensor product on `A ⊗ B`, basis index `a * dim(B) + b`.
    pub fn kron(&self, other: &Tensor3) -> Tensor3 {
        let (na, nb) = (self.n, other.n);
        let mut t = Tensor3::zeros(na * nb);
        let (ra, rb) = (self.sparse_rows(), other.sparse_rows());
        for a1 in 0..na {
            for a2 in 0..na {
                let ra_row = ra.row(a1, a2);
                if ra_row.is_empty() {
                    continue;
                }
                for b1 in 0..nb {
                    for b2 in 0..nb {
                        for (a3, c) in ra_row {
                            for (b3, d) in rb.row(b1, b2) {
                                t.set(a1 * nb + b1, a2 * nb + b2, a3 * nb + b3, c * d);
                            }
                        }
                    }
                }
            }
        }
        t
    }

    /// `(x, y) -> f(x op y)`.
    pub fn postcompose(&self, f: &Matrix) -> Result<Tensor3> {
        dim_check("operator size", self.n, f.rows())?;
        let n = self.n;
        Ok(Tensor3::from_fn(n, |i, j| f.apply_unchecked(self.product_of_basis(i, j))))
    }
}

/// `z_k = sum_{i,j} x_i y_j c[i][j][k]`.
pub fn apply_bilinear(op: &Tensor3, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
    dim_check("left operand", op.n, x.len())?;
    dim_check("right operand", op.n, y.len())?;
    let mut z = vec![Scalar::zero(); op.n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi * yj;
            for (k, zk) in z.iter_mut().enumerate() {
                axpy(zk, &c, op.get(i, j, k));
            }
        }
    }
    Ok(z)
}

/// Entrywise linear combination of operations.
pub fn op_combine(ops: &[(Scalar, &Tensor3)]) -> Result<Tensor3> {
    let Some((_, first)) = ops.first() else {
        return Err(crate::Error::Invalid("op_combine of an empty list".into()));
    };
    let n = first.n;
    let mut out = Tensor3::zeros(n);
    for (c, t) in ops {
        dim_check("tensor dimension", n, t.n)?;
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.data.iter_mut().zip(&t.data) {
            axpy(o, c, x);
        }
    }
    Ok(out)
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3(dim {}) {{", self.n)?;
        for (i, j, k, v) in self.entries() {
            write!(f, " ({i},{j},{k}):{v}")?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    }

    #[test]
    fn zero_tensor_gives_zero() {
        let t = Tensor3::zeros(2);
        let z = apply_bilinear(&t, &unit(2, 0), &unit(2, 1)).unwrap();
        assert!(z.iter().all(Scalar::is_zero));
    }

    #[test]
    fn combine_cancels() {
        let t = Tensor3::from_entries(2, [(0, 1, 1, Scalar::from_int(3))]).unwrap();
        let z = op_combine(&[(Scalar::one(), &t), (Scalar::from_int(-1), &t)]).unwrap();
        assert!(z.is_zero());
        let same = op_combine(&[(Scalar::one(), &t), (Scalar::zero(), &Tensor3::zeros(2))]).unwrap();
        assert_eq!(same, t);
        assert!(op_combine(&[(Scalar::one(), &t), (Scalar::one(), &Tensor3::zeros(3))]).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let t = Tensor3::zeros(2);
        assert!(apply_bilinear(&t, &unit(3, 0), &unit(2, 0)).is_err());
    }

    #[test]
    fn precompose_matches_direct() {
        let t = Tensor3::from_entries(2, [(0, 0, 0, Scalar::one()), (1, 0, 1, Scalar::from_int(2))]).unwrap();
        let f = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let l = t.precompose_left(&f).unwrap();
        // f(e_0) = e_1, so e_0 . e_0 becomes e_1 . e_0 = 2 e_1
        assert_eq!(l.product_of_basis(0, 0), &[Scalar::zero(), Scalar::from_int(2)]);
        let r = t.precompose_right(&f).unwrap();
        assert_eq!(r.product_of_basis(0, 1), &[Scalar::one(), Scalar::zero()]);
    }
}
