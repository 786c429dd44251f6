//! Constructions of t-ennea-algebras and their derived trialgebras.

use crate::algebra::{FiniteAlgebra, LinearOperator};
use crate::baxter::{commutes, is_baxter_on_trialgebra, is_t_baxter, trialgebra_from_operator};
use crate::error::{dim_check, Error, Result};
use crate::exactlin::{op_combine, Scalar, Tensor3};
use crate::report::CheckReport;

use super::{check_ennea, check_trialgebra, EnneaStructure, TrialgebraStructure};

fn require(r: CheckReport, what: &str) -> Result<()> {
    if r.passed() {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{what}:\n{r}")))
    }
}

/// `h = (◁, ▷, ∘̄)` and `v = (∧, ∨, t⋆)`. Fails if `e` is not a t-ennea-algebra.
pub fn horizontal_vertical(e: &EnneaStructure) -> Result<(TrialgebraStructure, TrialgebraStructure)> {
    require(check_ennea(e), "not a t-ennea-algebra")?;
    let h = TrialgebraStructure { prec: e.lhd(), succ: e.rhd(), circ: e.cbar(), t_tag: Some(e.t.clone()) };
    let v = TrialgebraStructure { prec: e.wedge(), succ: e.vee(), circ: e.star().scale(&e.t), t_tag: Some(e.t.clone()) };
    Ok((h, v))
}

/// Swaps `↙`/`↗`, trades `t≻` with `↓` and `t≺` with `↑`; `∘`, `↖`, `↘` are kept.
pub fn transpose_ennea(e: &EnneaStructure) -> Result<EnneaStructure> {
    let inv = e.t.recip().ok_or_else(|| Error::Invalid("transpose needs t != 0".into()))?;
    Ok(EnneaStructure {
        t: e.t.clone(),
        nw: e.nw.clone(),
        se: e.se.clone(),
        sw: e.ne.clone(),
        ne: e.sw.clone(),
        down: e.succ.scale(&e.t),
        up: e.prec.scale(&e.t),
        succ: e.down.scale(&inv),
        prec: e.up.scale(&inv),
        circ: e.circ.clone(),
    })
}

/// `x ↘^op y = y ↖ x`, `x ↗^op y = y ↙ x`, `x ↑^op y = y ↓ x`, `x ≻^op y = y ≺ x`
/// and symmetrically.
pub fn opposite_ennea(e: &EnneaStructure) -> EnneaStructure {
    EnneaStructure {
        t: e.t.clone(),
        se: e.nw.opposite(),
        nw: e.se.opposite(),
        ne: e.sw.opposite(),
        sw: e.ne.opposite(),
        up: e.down.opposite(),
        down: e.up.opposite(),
        succ: e.prec.opposite(),
        prec: e.succ.opposite(),
        circ: e.circ.opposite(),
    }
}

/// `↘ = γ(x)≻y`, `↗ = x≻γ(y)`, `↙ = γ(x)≺y`, `↖ = x≺γ(y)`, `↑ = x∘γ(y)`,
/// `↓ = γ(x)∘y`, keeping `≺, ≻, ∘`. No hypothesis check.
pub fn ennea_from_baxter_on_trialgebra_unchecked(tri: &TrialgebraStructure, g: &LinearOperator, t: &Scalar) -> Result<EnneaStructure> {
    dim_check("operator size", tri.dim(), g.dim())?;
    let m = &g.matrix;
    Ok(EnneaStructure {
        t: t.clone(),
        se: tri.succ.precompose_left(m)?,
        ne: tri.succ.precompose_right(m)?,
        sw: tri.prec.precompose_left(m)?,
        nw: tri.prec.precompose_right(m)?,
        up: tri.circ.precompose_right(m)?,
        down: tri.circ.precompose_left(m)?,
        prec: tri.prec.clone(),
        succ: tri.succ.clone(),
        circ: tri.circ.clone(),
    })
}

/// As the unchecked form after verifying the trialgebra axioms and that `g`
/// is a t-Baxter operator on it.
pub fn ennea_from_baxter_on_trialgebra(tri: &TrialgebraStructure, g: &LinearOperator, t: &Scalar) -> Result<EnneaStructure> {
    require(check_trialgebra(tri), "input is not a dendriform trialgebra")?;
    require(is_baxter_on_trialgebra(tri, g, t)?, "operator is not t-Baxter on the trialgebra")?;
    ennea_from_baxter_on_trialgebra_unchecked(tri, g, t)
}

/// The β-trialgebra `(xβ(y), β(x)y, t xy)` with `γ` acting on it.
pub fn ennea_from_commuting_pair_unchecked(
    alg: &FiniteAlgebra,
    b: &LinearOperator,
    g: &LinearOperator,
    t: &Scalar,
) -> Result<EnneaStructure> {
    dim_check("operator size", alg.dim(), b.dim())?;
    let tri = trialgebra_from_operator(alg, b, t);
    ennea_from_baxter_on_trialgebra_unchecked(&tri, g, t)
}

/// Requires both operators t-Baxter for the same `t` and commuting.
pub fn ennea_from_commuting_pair(alg: &FiniteAlgebra, b: &LinearOperator, g: &LinearOperator, t: &Scalar) -> Result<EnneaStructure> {
    require(is_t_baxter(alg, b, t)?, "first operator is not t-Baxter")?;
    require(is_t_baxter(alg, g, t)?, "second operator is not t-Baxter")?;
    require(commutes(b, g)?, "operators do not commute")?;
    ennea_from_commuting_pair_unchecked(alg, b, g, t)
}

/// Nine operations on `A ⊗ B` built from `(≺, ≻, ∘)` on `A` and
/// `(≺′, ≻′, ∘′)` on `B`, where `(≺′, ≻′, t∘′)` is the trialgebra in play.
/// Basis index `a * dim(B) + b`.
pub fn tensor_ennea(a: &TrialgebraStructure, b: &TrialgebraStructure, t: &Scalar) -> Result<EnneaStructure> {
    require(check_trialgebra(a), "left factor is not a dendriform trialgebra")?;
    require(check_trialgebra(&b.scale_circ(t)), "right factor with t∘′ is not a dendriform trialgebra")?;
    Ok(tensor_ennea_unchecked(a, b, t))
}

pub fn tensor_ennea_unchecked(a: &TrialgebraStructure, b: &TrialgebraStructure, t: &Scalar) -> EnneaStructure {
    let bc = &b.circ;
    EnneaStructure {
        t: t.clone(),
        nw: a.prec.kron(&b.prec),
        sw: a.prec.kron(&b.succ),
        ne: a.succ.kron(&b.prec),
        se: a.succ.kron(&b.succ),
        up: a.circ.kron(&b.prec),
        down: a.circ.kron(&b.succ),
        prec: a.prec.kron(bc),
        succ: a.succ.kron(bc),
        circ: a.circ.kron(bc),
    }
}

/// Pass iff the three tensors sum to `s.circ` and form a dendriform trialgebra.
pub fn is_nested(s: &TrialgebraStructure, split: (&Tensor3, &Tensor3, &Tensor3)) -> CheckReport {
    let mut r = CheckReport::new();
    let (p, q, c) = split;
    if p.dim() != s.dim() || q.dim() != s.dim() || c.dim() != s.dim() {
        return CheckReport::failing(format!("split dimensions {} {} {} vs {}", p.dim(), q.dim(), c.dim(), s.dim()));
    }
    let one = Scalar::one();
    let sum = op_combine(&[(one.clone(), p), (one.clone(), q), (one, c)]).expect("dims checked");
    r.merge(crate::algebra::compare_ops("split sums to ∘", &sum, &s.circ));
    let inner = TrialgebraStructure { prec: p.clone(), succ: q.clone(), circ: c.clone(), t_tag: None };
    r.merge_prefixed("split", check_trialgebra(&inner));
    r
}
