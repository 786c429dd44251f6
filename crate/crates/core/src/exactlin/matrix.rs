//! Dense rational matrices and exact rank.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{axpy, Scalar};
use crate::error::{dim_check, Result};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            dim_check(&format!("row {i} length"), c, row.len())?;
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Matrix::from_rows(v).expect("ragged integer matrix")
    }

    /// Builds a matrix from its columns.
    pub fn from_cols(rows: usize, cols: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            dim_check(&format!("column {j} length"), rows, col.len())?;
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        dim_check("matrix rows", self.rows, other.rows)?;
        dim_check("matrix cols", self.cols, other.cols)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        dim_check("inner dimension", self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        dim_check("vector length", self.cols, v.len())?;
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                axpy(o, x, self.get(i, j));
            }
        }
        out
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        rank_of_rows(&self.integer_rows())
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }
}

/// Fraction-free (Bareiss) elimination. Every intermediate entry is a minor of
/// the input, so the division by the previous pivot is exact. Among candidate
/// pivots in a column the one of least magnitude is taken.
pub fn rank_of_rows(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let pivot = (r..m)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(i.cmp(&j)));
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let piv = &prow[c];
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            if f.is_zero() {
                for x in row[c + 1..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * piv / &prev;
                    }
                }
            } else {
                for j in c + 1..n {
                    let v = &row[j] * piv - &f * &prow[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = piv.clone();
        r += 1;
    }
    r
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basic() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[0, 0, 1], &[0, 2, 0], &[0, 4, 3]]).rank(), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::new(1, 2), Scalar::new(1, 3)],
            vec![Scalar::new(3, 2), Scalar::from_int(1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn multiply_and_apply() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), Matrix::from_i64(&[&[2, 1], &[4, 3]]));
        let v = a.apply(&[Scalar::from_int(1), Scalar::from_int(-1)]).unwrap();
        assert_eq!(v, vec![Scalar::from_int(-1), Scalar::from_int(-1)]);
        assert!(a.apply(&[Scalar::one()]).is_err());
    }
}
