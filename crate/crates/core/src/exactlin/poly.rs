//! Polynomials in the structure parameter `t` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;

/// Dense coefficient list, lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct TPoly(Vec<Scalar>);

impl TPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        TPoly(coeffs)
    }

    pub fn zero() -> Self {
        TPoly(Vec::new())
    }

    pub fn one() -> Self {
        TPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        TPoly::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        TPoly::new(v)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        TPoly::monomial(Scalar::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = &acc * t + c;
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TPoly::new(self.0.iter().map(|x| x * c).collect())
    }
}

impl From<Scalar> for TPoly {
    fn from(c: Scalar) -> Self {
        TPoly::constant(c)
    }
}

impl From<i64> for TPoly {
    fn from(c: i64) -> Self {
        TPoly::constant(Scalar::from_int(c))
    }
}

impl Add<&TPoly> for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let n = self.0.len().max(rhs.0.len());
        let zero = Scalar::zero();
        TPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + rhs.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub<&TPoly> for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        self + &(-rhs)
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&TPoly> for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({self})")
    }
}
