//! t-Baxter and t-coBaxter operators and the trialgebras they induce.

use serde::{Deserialize, Serialize};

use crate::algebra::{compare_ops, triangular_algebra, triangular_pairs, FiniteAlgebra, LinearOperator};
use crate::error::{dim_check, Error, Result};
use crate::exactlin::{op_combine, Matrix, Scalar, Tensor3};
use crate::report::CheckReport;
use crate::splitting::TrialgebraStructure;

/// A linear map on an algebra together with its Baxter parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaxterOperator {
    pub carrier: FiniteAlgebra,
    pub map: LinearOperator,
    pub t: Scalar,
}

impl BaxterOperator {
    /// Validates the Baxter identity.
    pub fn new(carrier: FiniteAlgebra, map: LinearOperator, t: Scalar) -> Result<Self> {
        let r = is_t_baxter(&carrier, &map, &t)?;
        if !r.passed() {
            return Err(Error::Hypothesis(format!("not a {t}-Baxter operator:\n{r}")));
        }
        Ok(BaxterOperator { carrier, map, t })
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
}

/// `(x, y) -> g(x) op g(y)` and `(x, y) -> g(x op g(y) + g(x) op y + t x op y)`.
pub fn baxter_sides(op: &Tensor3, g: &Matrix, t: &Scalar) -> Result<(Tensor3, Tensor3)> {
    let left_g = op.precompose_left(g)?;
    let lhs = left_g.precompose_right(g)?;
    let inner = op_combine(&[(Scalar::one(), &op.precompose_right(g)?), (Scalar::one(), &left_g), (t.clone(), op)])?;
    Ok((lhs, inner.postcompose(g)?))
}

/// `β(x)β(y) = β(xβ(y) + β(x)y + t xy)` on all basis pairs.
pub fn is_t_baxter(alg: &FiniteAlgebra, b: &LinearOperator, t: &Scalar) -> Result<CheckReport> {
    dim_check("operator size", alg.dim(), b.dim())?;
    let (lhs, rhs) = baxter_sides(&alg.mult, &b.matrix, t)?;
    Ok(compare_ops(&format!("{t}-Baxter identity"), &lhs, &rhs))
}

/// `t' β` is a `t t'`-Baxter operator.
pub fn scale_baxter(b: &BaxterOperator, tprime: &Scalar) -> BaxterOperator {
    BaxterOperator { carrier: b.carrier.clone(), map: b.map.scale(tprime), t: &b.t * tprime }
}

/// Row and column operators on upper triangular `n x n` matrices,
/// `β(E_ij) = t E_ii` and `β₁(E_ij) = t E_jj`. Both are `(-t)`-Baxter.
pub fn triangular_baxters(n: usize, t: &Scalar) -> Result<(BaxterOperator, BaxterOperator)> {
    let alg = triangular_algebra(n)?;
    let pairs = triangular_pairs(n);
    let d = pairs.len();
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair");
    let mut row = Matrix::zeros(d, d);
    let mut col = Matrix::zeros(d, d);
    for (x, &(i, j)) in pairs.iter().enumerate() {
        row.set(idx(i, i), x, t.clone());
        col.set(idx(j, j), x, t.clone());
    }
    let param = -t;
    Ok((
        BaxterOperator::new(alg.clone(), LinearOperator::new(row)?, param.clone())?,
        BaxterOperator::new(alg, LinearOperator::new(col)?, param)?,
    ))
}

/// Pass iff `ab = ba`; the witness is the first basis vector where they differ.
pub fn commutes(a: &LinearOperator, b: &LinearOperator) -> Result<CheckReport> {
    dim_check("operator size", a.dim(), b.dim())?;
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    let mut r = CheckReport::new();
    for j in 0..a.dim() {
        r.compare(|| "commutation ab = ba".into(), &[j], &ab.image(j), &ba.image(j));
    }
    Ok(r)
}

/// `x ≺ y = xβ(y)`, `x ≻ y = β(x)y`, `x ∘ y = t xy`.
pub fn trialgebra_from_baxter(b: &BaxterOperator) -> TrialgebraStructure {
    trialgebra_from_operator(&b.carrier, &b.map, &b.t)
}

/// As [`trialgebra_from_baxter`] without validating the operator.
pub fn trialgebra_from_operator(alg: &FiniteAlgebra, map: &LinearOperator, t: &Scalar) -> TrialgebraStructure {
    let m = &alg.mult;
    TrialgebraStructure {
        prec: m.precompose_right(&map.matrix).expect("dims"),
        succ: m.precompose_left(&map.matrix).expect("dims"),
        circ: m.scale(t),
        t_tag: Some(t.clone()),
    }
}

/// `β(x ⋆ y) = β(x)β(y)` for the induced trialgebra.
pub fn check_morphism(b: &BaxterOperator) -> CheckReport {
    let star = trialgebra_from_baxter(b).star();
    let lhs = star.postcompose(&b.map.matrix).expect("dims");
    let rhs = b.carrier.mult.precompose_left(&b.map.matrix).and_then(|m| m.precompose_right(&b.map.matrix)).expect("dims");
    compare_ops("morphism β(x ⋆ y) = β(x)β(y)", &lhs, &rhs)
}

/// The three Baxter identities for `≻`, `≺` and `∘` of a trialgebra.
pub fn is_baxter_on_trialgebra(tri: &TrialgebraStructure, g: &LinearOperator, t: &Scalar) -> Result<CheckReport> {
    dim_check("operator size", tri.dim(), g.dim())?;
    let mut r = CheckReport::new();
    for (name, op) in [("succ", &tri.succ), ("prec", &tri.prec), ("circ", &tri.circ)] {
        let (lhs, rhs) = baxter_sides(op, &g.matrix, t)?;
        r.merge(compare_ops(&format!("{t}-Baxter identity for {name}"), &lhs, &rhs));
    }
    Ok(r)
}

/// A coproduct given by the images `Δ(e_i) = Σ c e_j ⊗ e_k`. Column `i` of
/// `coproduct` is `Δ(e_i)` flattened with index `j * n + k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoalgebraData {
    pub dim: usize,
    pub coproduct: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Scalar>>,
}

impl CoalgebraData {
    pub fn new(dim: usize, coproduct: Matrix, counit: Option<Vec<Scalar>>) -> Result<Self> {
        dim_check("coproduct rows", dim * dim, coproduct.rows())?;
        dim_check("coproduct cols", dim, coproduct.cols())?;
        if let Some(c) = &counit {
            dim_check("counit length", dim, c.len())?;
        }
        Ok(CoalgebraData { dim, coproduct, counit })
    }

    pub fn zero(dim: usize) -> Self {
        CoalgebraData { dim, coproduct: Matrix::zeros(dim * dim, dim), counit: None }
    }

    /// Entries `(i, j, k, c)` meaning `Δ(e_i) ∋ c e_j ⊗ e_k`; repeats add up.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Result<Self> {
        let mut m = Matrix::zeros(dim * dim, dim);
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Dimension(format!("coproduct entry ({i},{j},{k}) out of range for dim {dim}")));
            }
            m.add_at(j * dim + k, i, &c);
        }
        Ok(CoalgebraData { dim, coproduct: m, counit: None })
    }

    /// Nonzero entries `(i, j, k, c)` in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut v = Vec::new();
        for i in 0..n {
            for jk in 0..n * n {
                let c = self.coproduct.get(jk, i);
                if !c.is_zero() {
                    v.push((i, jk / n, jk % n, c.clone()));
                }
            }
        }
        v
    }

    pub fn delta(&self, i: usize) -> Vec<Scalar> {
        self.coproduct.col(i)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.coproduct.apply(v)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CoalgebraData { dim: self.dim, coproduct: self.coproduct.scale(c), counit: self.counit.clone() }
    }

    pub fn add(&self, other: &CoalgebraData) -> Result<Self> {
        Ok(CoalgebraData { dim: self.dim, coproduct: self.coproduct.add(&other.coproduct)?, counit: None })
    }

    /// Sparse images: for each `i`, the nonzero `(j, k, c)` of `Δ(e_i)`.
    pub fn sparse(&self) -> Vec<Vec<(usize, usize, Scalar)>> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n * n)
                    .filter_map(|jk| {
                        let c = self.coproduct.get(jk, i);
                        (!c.is_zero()).then(|| (jk / n, jk % n, c.clone()))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_coassociative(&self) -> CheckReport {
        check_mixed_coassociativity(self, self, "coassociativity")
    }

    /// `(ε ⊗ id)Δ = id = (id ⊗ ε)Δ` when a counit is given.
    pub fn check_counit(&self) -> CheckReport {
        let mut r = CheckReport::new();
        let Some(eps) = &self.counit else {
            r.note("no counit given");
            return r;
        };
        let n = self.dim;
        for i in 0..n {
            let mut left = vec![Scalar::zero(); n];
            let mut right = vec![Scalar::zero(); n];
            for (j, k, c) in &self.sparse()[i] {
                left[*k] += &(c * &eps[*j]);
                right[*j] += &(c * &eps[*k]);
            }
            let e = crate::exactlin::basis_vector(n, i);
            r.compare(|| "(ε ⊗ id)Δ = id".into(), &[i], &left, &e);
            r.compare(|| "(id ⊗ ε)Δ = id".into(), &[i], &right, &e);
        }
        r
    }
}

/// `(a ⊗ id)(b(e_i))`, flattened as `(p * n + q) * n + r`.
pub fn left_then(a: &[Vec<(usize, usize, Scalar)>], b: &[Vec<(usize, usize, Scalar)>], i: usize, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n * n * n];
    for (x, y, c) in &b[i] {
        for (p, q, d) in &a[*x] {
            out[(p * n + q) * n + y] += &(c * d);
        }
    }
    out
}

/// `(id ⊗ a)(b(e_i))`.
pub fn right_then(a: &[Vec<(usize, usize, Scalar)>], b: &[Vec<(usize, usize, Scalar)>], i: usize, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n * n * n];
    for (x, y, c) in &b[i] {
        for (q, r, d) in &a[*y] {
            out[(x * n + q) * n + r] += &(c * d);
        }
    }
    out
}

/// `(a ⊗ id) b = (id ⊗ b) a` on every basis vector.
pub fn check_mixed_coassociativity(a: &CoalgebraData, b: &CoalgebraData, context: &str) -> CheckReport {
    let n = a.dim;
    let (sa, sb) = (a.sparse(), b.sparse());
    let mut r = CheckReport::new();
    for i in 0..n {
        let lhs = left_then(&sa, &sb, i, n);
        let rhs = right_then(&sb, &sa, i, n);
        r.compare(|| context.to_string(), &[i], &lhs, &rhs);
    }
    r
}

/// `(F ⊗ G) v` for `v` in the flattened tensor square.
fn kron_apply(f: &Matrix, g: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    let n = f.rows();
    let mut out = vec![Scalar::zero(); n * n];
    for (ab, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (a, b) = (ab / n, ab % n);
        for p in 0..n {
            let fp = f.get(p, a);
            if fp.is_zero() {
                continue;
            }
            let c = x * fp;
            for q in 0..n {
                let gq = g.get(q, b);
                if !gq.is_zero() {
                    out[p * n + q] += &(&c * gq);
                }
            }
        }
    }
    out
}

/// `(ψ⊗ψ)Δ = tΔψ + (id⊗ψ)Δψ + (ψ⊗id)Δψ` on every basis vector.
pub fn is_t_cobaxter(c: &CoalgebraData, psi: &LinearOperator, t: &Scalar) -> Result<CheckReport> {
    dim_check("operator size", c.dim, psi.dim())?;
    let n = c.dim;
    let id = Matrix::identity(n);
    let mut r = CheckReport::new();
    for i in 0..n {
        let lhs = kron_apply(&psi.matrix, &psi.matrix, &c.delta(i));
        let dpsi = c.apply(&psi.image(i))?;
        let a = kron_apply(&id, &psi.matrix, &dpsi);
        let b = kron_apply(&psi.matrix, &id, &dpsi);
        let rhs: Vec<Scalar> = (0..n * n).map(|k| t * &dpsi[k] + &a[k] + &b[k]).collect();
        r.compare(|| format!("{t}-coBaxter identity"), &[i], &lhs, &rhs);
    }
    Ok(r)
}

/// Coalgebra on `X_ij` (`i <= j`) with `Δ X_ij = Σ_k X_ik ⊗ X_kj` and the
/// diagonal counit, together with `ψ(X_ii) = t Σ_j X_ij`, `ψ(X_ij) = 0`
/// otherwise. `ψ` is a `(-t)`-coBaxter operator.
pub fn triangular_coalgebra(n: usize, t: &Scalar) -> Result<(CoalgebraData, LinearOperator)> {
    if n == 0 {
        return Err(Error::Invalid("triangular coalgebra needs n >= 1".into()));
    }
    let pairs = triangular_pairs(n);
    let d = pairs.len();
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair");
    let mut entries = Vec::new();
    let mut psi = Matrix::zeros(d, d);
    let mut counit = vec![Scalar::zero(); d];
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for k in i..=j {
            entries.push((x, idx(i, k), idx(k, j), Scalar::one()));
        }
        if i == j {
            counit[x] = Scalar::one();
            for jj in i..n {
                psi.set(idx(i, jj), x, t.clone());
            }
        }
    }
    let mut c = CoalgebraData::from_entries(d, entries)?;
    c.counit = Some(counit);
    Ok((c, LinearOperator::new(psi)?))
}

/// The algebra dual to a coalgebra: `e_j e_k = Σ_i Δ(e_i)_{jk} e_i`.
pub fn dual_algebra(c: &CoalgebraData) -> FiniteAlgebra {
    let n = c.dim;
    let mult = Tensor3::from_entries(n, c.entries().into_iter().map(|(i, j, k, v)| (j, k, i, v))).expect("in range");
    FiniteAlgebra { mult, unit: c.counit.clone(), labels: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_algebra;
    use crate::exactlin::{basis_vector, q};
    use crate::splitting::check_trialgebra;

    #[test]
    fn zero_and_identity() {
        let m2 = matrix_algebra(2);
        for t in ["0", "1", "-5/2"] {
            assert!(is_t_baxter(&m2, &LinearOperator::zero(4), &q(t)).unwrap().passed());
        }
        assert!(is_t_baxter(&m2, &LinearOperator::identity(4), &q("-1")).unwrap().passed());
        let r = is_t_baxter(&m2, &LinearOperator::identity(4), &q("1")).unwrap();
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].tuple, vec![0, 0]);
    }

    #[test]
    fn row_operator_hand_instance() {
        // X = Y = E11 + E12; β(X)β(Y) = diag(4,0) = β(Xβ(Y) + β(X)Y - XY).
        let (row, _) = triangular_baxters(2, &q("1")).unwrap();
        assert_eq!(row.t, q("-1"));
        let x = vec![q("1"), q("1"), q("0")];
        let bx = row.map.apply(&x).unwrap();
        assert_eq!(bx, vec![q("2"), q("0"), q("0")]);
        let lhs = row.carrier.product(&bx, &bx).unwrap();
        assert_eq!(lhs, vec![q("4"), q("0"), q("0")]);
        let xbx = row.carrier.product(&x, &bx).unwrap();
        let bxx = row.carrier.product(&bx, &x).unwrap();
        let xx = row.carrier.product(&x, &x).unwrap();
        let inner: Vec<Scalar> = (0..3).map(|k| &xbx[k] + &bxx[k] - &xx[k]).collect();
        assert_eq!(inner, vec![q("3"), q("1"), q("0")]);
        assert_eq!(row.map.apply(&inner).unwrap(), lhs);
    }

    #[test]
    fn triangular_examples() {
        let (row, col) = triangular_baxters(1, &q("1")).unwrap();
        assert_eq!(row.map.image(0), vec![q("1")]);
        assert_eq!(col.t, q("-1"));
        let (row, col) = triangular_baxters(2, &q("1")).unwrap();
        // E12 is basis index 1; E11 is 0, E22 is 2.
        assert_eq!(row.map.image(1), basis_vector(3, 0));
        let r = commutes(&row.map, &col.map).unwrap();
        assert!(!r.passed());
        let w = &r.witnesses[0];
        assert_eq!(w.tuple, vec![1]);
        // β(β₁(E12)) = β(E22) = E22 on the left, β₁(β(E12)) = E11 on the right
        assert_eq!(w.lhs, basis_vector(3, 2));
        assert_eq!(w.rhs, basis_vector(3, 0));
        assert!(commutes(&row.map, &row.map).unwrap().passed());
    }

    #[test]
    fn scaling() {
        let (row, _) = triangular_baxters(3, &q("1")).unwrap();
        let s = scale_baxter(&row, &q("3"));
        assert_eq!(s.t, q("-3"));
        assert!(is_t_baxter(&s.carrier, &s.map, &s.t).unwrap().passed());
        let z = scale_baxter(&row, &q("0"));
        assert!(z.map.matrix.is_zero());
        assert_eq!(scale_baxter(&row, &q("1")), row);
        let id = BaxterOperator::new(matrix_algebra(2), LinearOperator::identity(4), q("-1")).unwrap();
        let neg = scale_baxter(&id, &q("-1"));
        assert_eq!(neg.t, q("1"));
        assert!(is_t_baxter(&neg.carrier, &neg.map, &neg.t).unwrap().passed());
    }

    #[test]
    fn cobaxter_examples() {
        let (c, psi) = triangular_coalgebra(2, &q("1")).unwrap();
        assert!(c.is_coassociative().passed());
        assert!(c.check_counit().passed());
        assert!(is_t_cobaxter(&c, &psi, &q("-1")).unwrap().passed());
        assert!(!is_t_cobaxter(&c, &psi, &q("1")).unwrap().passed());
        assert!(is_t_cobaxter(&c, &LinearOperator::zero(3), &q("7")).unwrap().passed());
        assert!(is_t_cobaxter(&c, &LinearOperator::identity(3), &q("-1")).unwrap().passed());
        // Dual picture: ψ transposed is the row operator on the dual algebra.
        let dual = dual_algebra(&c);
        assert_eq!(dual.mult, triangular_algebra(2).unwrap().mult);
        assert!(is_t_baxter(&dual, &psi.transpose(), &q("-1")).unwrap().passed());
        let (row, _) = triangular_baxters(2, &q("1")).unwrap();
        assert_eq!(psi.transpose(), row.map);
    }

    #[test]
    fn full_matrix_coalgebra_also_works() {
        for n in [2usize, 3] {
            let d = n * n;
            let mut entries = Vec::new();
            let mut psi = Matrix::zeros(d, d);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        entries.push((i * n + j, i * n + k, k * n + j, Scalar::one()));
                    }
                }
                for j in 0..n {
                    psi.set(i * n + j, i * n + i, q("2/3"));
                }
            }
            let c = CoalgebraData::from_entries(d, entries).unwrap();
            assert!(is_t_cobaxter(&c, &LinearOperator::new(psi).unwrap(), &q("-2/3")).unwrap().passed());
        }
    }

    #[test]
    fn trialgebra_from_row_operator() {
        let (row, _) = triangular_baxters(2, &q("1")).unwrap();
        let tri = trialgebra_from_baxter(&row);
        assert!(check_trialgebra(&tri).passed());
        let m = check_morphism(&row);
        assert!(m.passed());
        assert_eq!(m.checks_run, 9);
        let swapped = TrialgebraStructure { prec: tri.succ.clone(), succ: tri.prec.clone(), ..tri.clone() };
        assert!(!check_trialgebra(&swapped).passed());
        // ⋆ equals x·β(y) + β(x)·y + t x·y, expanded directly.
        let star = tri.star();
        for i in 0..3 {
            for j in 0..3 {
                let (x, y) = (basis_vector(3, i), basis_vector(3, j));
                let a = row.carrier.product(&x, &row.map.apply(&y).unwrap()).unwrap();
                let b = row.carrier.product(&row.map.apply(&x).unwrap(), &y).unwrap();
                let c = row.carrier.product(&x, &y).unwrap();
                let want: Vec<Scalar> = (0..3).map(|k| &a[k] + &b[k] + &(&row.t * &c[k])).collect();
                assert_eq!(star.product_of_basis(i, j), want.as_slice());
            }
        }
    }

    #[test]
    fn baxter_on_trialgebra() {
        let (row, _) = triangular_baxters(2, &q("1")).unwrap();
        let tri = trialgebra_from_baxter(&row);
        assert!(is_baxter_on_trialgebra(&tri, &LinearOperator::zero(3), &q("-1")).unwrap().passed());
        let r = is_baxter_on_trialgebra(&tri, &LinearOperator::identity(3), &q("2")).unwrap();
        assert!(!r.passed());
    }
}
