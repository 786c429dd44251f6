//! Left pre-Lie algebras built from trialgebras and t-ennea-algebras.

use serde::{Deserialize, Serialize};

use crate::algebra::{left_nested, right_nested};
use crate::error::{Error, Result};
use crate::exactlin::{op_combine, vec_add, vec_sub, Scalar, Tensor3};
use crate::report::CheckReport;

use super::{check_ennea, check_trialgebra, EnneaStructure, TrialgebraStructure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreLieStructure {
    pub bowtie: Tensor3,
}

impl PreLieStructure {
    pub fn dim(&self) -> usize {
        self.bowtie.dim()
    }

    /// `[x, y] = x⋈y − y⋈x`.
    pub fn bracket(&self) -> Tensor3 {
        bracket(&self.bowtie)
    }
}

/// Commutator `x·y − y·x` of a bilinear operation.
pub fn bracket(op: &Tensor3) -> Tensor3 {
    op.sub(&op.opposite()).expect("same dim")
}

/// The pre-Lie identity, then antisymmetry and Jacobi for the bracket.
pub fn check_prelie(p: &PreLieStructure) -> CheckReport {
    let n = p.dim();
    let rows = p.bowtie.sparse_rows();
    // assoc(i, j, k) = (x⋈y)⋈z − x⋈(y⋈z)
    let assoc = |i, j, k| vec_sub(&left_nested(&rows, &rows, i, j, k), &right_nested(&rows, &rows, i, j, k));
    let mut r = CheckReport::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                r.compare(|| "pre-Lie identity".into(), &[i, j, k], &assoc(i, j, k), &assoc(j, i, k));
            }
        }
    }
    let br = p.bracket();
    for i in 0..n {
        for j in 0..n {
            let neg: Vec<Scalar> = br.product_of_basis(j, i).iter().map(|x| -x).collect();
            r.compare(|| "bracket antisymmetry".into(), &[i, j], br.product_of_basis(i, j), &neg);
        }
    }
    let brows = br.sparse_rows();
    let zero = vec![Scalar::zero(); n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = vec_add(
                    &vec_add(&right_nested(&brows, &brows, i, j, k), &right_nested(&brows, &brows, j, k, i)),
                    &right_nested(&brows, &brows, k, i, j),
                );
                r.compare(|| "Jacobi identity".into(), &[i, j, k], &s, &zero);
            }
        }
    }
    r
}

/// `x ⋈ y = x ≻ y − y ≺ x + t x ∘ y`, given that `(≺, ≻, t∘)` is a
/// dendriform trialgebra. Its bracket agrees with that of `≺ + ≻ + t∘`.
pub fn prelie_from_trialgebra(s: &TrialgebraStructure, t: &Scalar) -> Result<PreLieStructure> {
    let r = check_trialgebra(&s.scale_circ(t));
    if !r.passed() {
        return Err(Error::Hypothesis(format!("not a dendriform trialgebra:\n{r}")));
    }
    Ok(prelie_from_trialgebra_unchecked(s, t))
}

pub fn prelie_from_trialgebra_unchecked(s: &TrialgebraStructure, t: &Scalar) -> PreLieStructure {
    let bowtie = op_combine(&[(Scalar::one(), &s.succ), (Scalar::from_int(-1), &s.prec.opposite()), (t.clone(), &s.circ)])
        .expect("dims agree");
    PreLieStructure { bowtie }
}

/// `⋈ = ▷ − ◁^op + ∘̄` and `⋈̂ = ∨ − ∧^op + t⋆`.
pub fn prelie_pair_from_ennea(e: &EnneaStructure) -> Result<(PreLieStructure, PreLieStructure)> {
    let r = check_ennea(e);
    if !r.passed() {
        return Err(Error::Hypothesis(format!("not a t-ennea-algebra:\n{r}")));
    }
    let h = TrialgebraStructure { prec: e.lhd(), succ: e.rhd(), circ: e.cbar(), t_tag: None };
    let v = TrialgebraStructure { prec: e.wedge(), succ: e.vee(), circ: e.star(), t_tag: None };
    Ok((prelie_from_trialgebra_unchecked(&h, &Scalar::one()), prelie_from_trialgebra_unchecked(&v, &e.t)))
}
