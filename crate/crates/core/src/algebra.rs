//! Finite-dimensional associative algebras given by structure constants.

use serde::{Deserialize, Serialize};

use crate::error::{dim_check, Error, Result};
use crate::exactlin::{basis_vector, Matrix, Scalar, SparseRows, Tensor3};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    pub mult: Tensor3,
    pub unit: Option<Vec<Scalar>>,
    pub labels: Option<Vec<String>>,
}

impl FiniteAlgebra {
    /// Validates associativity and, when given, the unit.
    pub fn new(mult: Tensor3, unit: Option<Vec<Scalar>>, labels: Option<Vec<String>>) -> Result<Self> {
        let a = FiniteAlgebra::new_unchecked(mult, unit, labels)?;
        let r = is_associative(&a.mult);
        if !r.passed() {
            return Err(Error::Invalid(format!("multiplication is not associative: {}", r.witnesses[0].context)));
        }
        if a.unit.is_some() && !a.check_unit().passed() {
            return Err(Error::Invalid("unit vector is not a two-sided unit".into()));
        }
        Ok(a)
    }

    /// Skips the associativity check; dimensions are still validated.
    pub fn new_unchecked(mult: Tensor3, unit: Option<Vec<Scalar>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mult.dim();
        if let Some(u) = &unit {
            dim_check("unit length", n, u.len())?;
        }
        if let Some(l) = &labels {
            dim_check("label count", n, l.len())?;
        }
        Ok(FiniteAlgebra { mult, unit, labels })
    }

    pub fn dim(&self) -> usize {
        self.mult.dim()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels.as_ref().map_or_else(|| format!("e{i}"), |l| l[i].clone())
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        crate::exactlin::apply_bilinear(&self.mult, x, y)
    }

    pub fn check_unit(&self) -> CheckReport {
        let mut r = CheckReport::new();
        let Some(u) = &self.unit else {
            r.note("no unit given");
            return r;
        };
        let n = self.dim();
        for i in 0..n {
            let e = basis_vector(n, i);
            let left = self.product(u, &e).expect("dims checked");
            r.compare(|| "unit * e".into(), &[i], &left, &e);
            let right = self.product(&e, u).expect("dims checked");
            r.compare(|| "e * unit".into(), &[i], &right, &e);
        }
        r
    }

    /// Left multiplication `x -> a x` as a matrix.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols = (0..n).map(|j| self.product(a, &basis_vector(n, j)).expect("dims")).collect();
        Matrix::from_cols(n, cols).expect("square")
    }

    /// Right multiplication `x -> x a` as a matrix.
    pub fn right_mult(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols = (0..n).map(|j| self.product(&basis_vector(n, j), a).expect("dims")).collect();
        Matrix::from_cols(n, cols).expect("square")
    }
}

/// A square matrix acting on an algebra's carrier space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearOperator {
    pub matrix: Matrix,
}

impl LinearOperator {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!("operator must be square, got {}x{}", matrix.rows(), matrix.cols())));
        }
        Ok(LinearOperator { matrix })
    }

    pub fn zero(n: usize) -> Self {
        LinearOperator { matrix: Matrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        LinearOperator { matrix: Matrix::identity(n) }
    }

    /// Column `j` is the image of `e_j`.
    pub fn from_images(n: usize, images: Vec<Vec<Scalar>>) -> Result<Self> {
        LinearOperator::new(Matrix::from_cols(n, images)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.apply(v)
    }

    pub fn image(&self, j: usize) -> Vec<Scalar> {
        self.matrix.col(j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        Ok(LinearOperator { matrix: self.matrix.mul(&other.matrix)? })
    }

    pub fn scale(&self, c: &Scalar) -> LinearOperator {
        LinearOperator { matrix: self.matrix.scale(c) }
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        Ok(LinearOperator { matrix: self.matrix.add(&other.matrix)? })
    }

    pub fn transpose(&self) -> LinearOperator {
        LinearOperator { matrix: self.matrix.transpose() }
    }
}

/// Checks `(e_i e_j) e_k = e_i (e_j e_k)` on all basis triples.
pub fn is_associative(op: &Tensor3) -> CheckReport {
    let rows = op.sparse_rows();
    let n = op.dim();
    let mut r = CheckReport::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = left_nested(&rows, &rows, i, j, k);
                let rhs = right_nested(&rows, &rows, i, j, k);
                r.compare(|| "associativity".into(), &[i, j, k], &lhs, &rhs);
            }
        }
    }
    r
}

/// Compares two bilinear operations on all basis pairs. The witness is the
/// first differing pair.
pub fn compare_ops(context: &str, a: &Tensor3, b: &Tensor3) -> CheckReport {
    let mut r = CheckReport::new();
    let n = a.dim();
    if n != b.dim() {
        r.record_fail(crate::report::Witness {
            context: format!("{context}: dimension {n} vs {}", b.dim()),
            tuple: vec![],
            lhs: vec![],
            rhs: vec![],
        });
        return r;
    }
    let mut witnessed = false;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.product_of_basis(i, j), b.product_of_basis(i, j));
            if x == y {
                r.record_pass();
            } else if witnessed {
                r.record_repeat_fail();
            } else {
                witnessed = true;
                r.compare(|| context.to_string(), &[i, j], x, y);
            }
        }
    }
    r
}

/// `(e_i inner e_j) outer e_k` as a dense vector.
pub fn left_nested(outer: &SparseRows, inner: &SparseRows, i: usize, j: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); outer.dim()];
    for (p, c) in inner.row(i, j) {
        for (q, d) in outer.row(*p, k) {
            v[*q] += c * d;
        }
    }
    v
}

/// `e_i outer (e_j inner e_k)` as a dense vector.
pub fn right_nested(outer: &SparseRows, inner: &SparseRows, i: usize, j: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); outer.dim()];
    for (p, c) in inner.row(j, k) {
        for (q, d) in outer.row(i, *p) {
            v[*q] += c * d;
        }
    }
    v
}

/// `c^op[i][j][k] = c[j][i][k]`.
pub fn opposite_op(op: &Tensor3) -> Tensor3 {
    op.opposite()
}

/// Index of the matrix unit `E_ij` (`i <= j`) in the triangular basis.
pub fn triangular_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * n - i * (i + 1) / 2 + j
}

/// Pairs `(i, j)` with `i <= j`, in basis order.
pub fn triangular_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i..n {
            v.push((i, j));
        }
    }
    v
}

/// Upper triangular `n x n` matrices with matrix-unit multiplication.
pub fn triangular_algebra(n: usize) -> Result<FiniteAlgebra> {
    if n == 0 {
        return Err(Error::Invalid("triangular algebra needs n >= 1".into()));
    }
    let pairs = triangular_pairs(n);
    let d = pairs.len();
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair");
    let mut mult = Tensor3::zeros(d);
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                mult.set(a, b, idx(i, l), Scalar::one());
            }
        }
    }
    let mut unit = vec![Scalar::zero(); d];
    for i in 0..n {
        unit[idx(i, i)] = Scalar::one();
    }
    let labels = pairs.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    FiniteAlgebra::new(mult, Some(unit), Some(labels))
}

/// Full matrix algebra `M_n`, basis `E_rc` at index `r * n + c`.
pub fn matrix_algebra(n: usize) -> FiniteAlgebra {
    let d = n * n;
    let mut mult = Tensor3::zeros(d);
    for a in 0..n {
        for b in 0..n {
            for d2 in 0..n {
                mult.set(a * n + b, b * n + d2, a * n + d2, Scalar::one());
            }
        }
    }
    let mut unit = vec![Scalar::zero(); d];
    for i in 0..n {
        unit[i * n + i] = Scalar::one();
    }
    let labels = (0..d).map(|x| format!("E{}{}", x / n + 1, x % n + 1)).collect();
    FiniteAlgebra { mult, unit: Some(unit), labels: Some(labels) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_is_associative_and_unital() {
        let m2 = matrix_algebra(2);
        assert!(is_associative(&m2.mult).passed());
        assert!(m2.check_unit().passed());
    }

    #[test]
    fn perturbed_m2_fails_with_witness() {
        let mut m2 = matrix_algebra(2);
        // E11 * E11 gets an extra E12 term.
        m2.mult.add_at(0, 0, 1, &Scalar::one());
        let r = is_associative(&m2.mult);
        assert!(!r.passed());
        let w = &r.witnesses[0];
        // Oracle: evaluate both sides of the first failing triple directly.
        let e = |i| basis_vector(4, i);
        let (i, j, k) = (w.tuple[0], w.tuple[1], w.tuple[2]);
        let lhs = m2.product(&m2.product(&e(i), &e(j)).unwrap(), &e(k)).unwrap();
        let rhs = m2.product(&e(i), &m2.product(&e(j), &e(k)).unwrap()).unwrap();
        assert_ne!(lhs, rhs);
        assert_eq!(w.lhs, lhs);
        assert_eq!(w.rhs, rhs);
        assert_eq!(w.tuple, vec![0, 0, 0]);
    }

    #[test]
    fn triangular_tables() {
        let t1 = triangular_algebra(1).unwrap();
        assert_eq!(t1.dim(), 1);
        assert_eq!(t1.mult.get(0, 0, 0), &Scalar::one());
        let t2 = triangular_algebra(2).unwrap();
        assert_eq!(t2.dim(), 3);
        let (e11, e12, e22) = (0, 1, 2);
        assert_eq!(t2.mult.product_of_basis(e11, e12), basis_vector(3, e12).as_slice());
        assert_eq!(t2.mult.product_of_basis(e12, e22), basis_vector(3, e12).as_slice());
        assert!(t2.mult.product_of_basis(e12, e12).iter().all(Scalar::is_zero));
        let t3 = triangular_algebra(3).unwrap();
        assert_eq!(t3.dim(), 6);
        assert!(is_associative(&t3.mult).passed());
        assert!(t3.check_unit().passed());
        for n in 1..5 {
            for (x, &(i, j)) in triangular_pairs(n).iter().enumerate() {
                assert_eq!(triangular_index(n, i, j), x);
            }
        }
    }

    #[test]
    fn opposite_of_m2_is_transpose_reversal() {
        let m2 = matrix_algebra(2);
        let op = opposite_op(&m2.mult);
        // Oracle: X *op Y = (Y^T X^T)^T... equivalently YX. Check against transpose map.
        let tr = |x: usize| (x % 2) * 2 + x / 2;
        for a in 0..4 {
            for b in 0..4 {
                // transpose(a *op b) = transpose(b a) = a^T b^T
                let lhs: Vec<Scalar> = {
                    let v = op.product_of_basis(a, b);
                    let mut w = vec![Scalar::zero(); 4];
                    for (k, c) in v.iter().enumerate() {
                        w[tr(k)] = c.clone();
                    }
                    w
                };
                assert_eq!(lhs.as_slice(), m2.mult.product_of_basis(tr(a), tr(b)));
            }
        }
        assert_eq!(opposite_op(&op), m2.mult);
    }
}
