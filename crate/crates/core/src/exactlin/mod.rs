//! Exact rational scalars, matrices, polynomials in `t` and bilinear tensors.

pub mod acc;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod tensor;

pub use acc::SparseAcc;
pub use matrix::{rank_of_rows, Matrix};
pub use poly::TPoly;
pub use scalar::{axpy, Scalar};
pub use tensor::{apply_bilinear, op_combine, SparseRows, Tensor3};

/// Standard basis vector `e_i` of length `n`.
pub fn basis_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

/// Parses a rational such as `"3"`, `"-2/5"`.
pub fn q(s: &str) -> Scalar {
    s.parse().unwrap_or_else(|e| panic!("bad rational literal {s:?}: {e}"))
}
