//! Reusable sparse accumulator for dense result vectors.

use super::scalar::Scalar;

/// A length-`n` vector that remembers which slots were written, so clearing
/// costs only the touched entries.
#[derive(Clone, Debug)]
pub struct SparseAcc {
    vals: Vec<Scalar>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl SparseAcc {
    pub fn new(n: usize) -> Self {
        SparseAcc { vals: vec![Scalar::zero(); n], touched: Vec::new(), mark: vec![false; n] }
    }

    #[inline]
    fn touch(&mut self, k: usize) {
        if !self.mark[k] {
            self.mark[k] = true;
            self.touched.push(k);
        }
    }

    #[inline]
    pub fn add(&mut self, k: usize, v: &Scalar) {
        self.touch(k);
        self.vals[k] += v;
    }

    #[inline]
    pub fn add_owned(&mut self, k: usize, v: Scalar) {
        self.touch(k);
        self.vals[k] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.touched.iter().all(|&k| self.vals[k].is_zero())
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.vals.len()];
        for &k in &self.touched {
            v[k] = self.vals[k].clone();
        }
        v
    }

    /// Nonzero entries in index order.
    pub fn nonzeros(&self) -> Vec<(usize, Scalar)> {
        let mut v: Vec<(usize, Scalar)> =
            self.touched.iter().filter(|&&k| !self.vals[k].is_zero()).map(|&k| (k, self.vals[k].clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    pub fn clear(&mut self) {
        for &k in &self.touched {
            self.vals[k] = Scalar::zero();
            self.mark[k] = false;
        }
        self.touched.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulate_and_clear() {
        let mut a = SparseAcc::new(4);
        a.add(2, &Scalar::from_int(3));
        a.add(2, &Scalar::from_int(-3));
        assert!(a.is_zero());
        a.add(1, &Scalar::new(1, 2));
        assert_eq!(a.nonzeros(), vec![(1, Scalar::new(1, 2))]);
        a.clear();
        assert!(a.is_zero());
        assert_eq!(a.to_dense(), vec![Scalar::zero(); 4]);
    }
}
