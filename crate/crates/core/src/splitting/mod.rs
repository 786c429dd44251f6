//! Dendriform trialgebras, quadri-algebras and t-ennea-algebras.

mod ennea;
mod prelie;
pub mod table;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{dim_check, Result};
use crate::exactlin::{op_combine, Scalar, Tensor3};
use crate::report::CheckReport;

pub use ennea::{
    ennea_from_baxter_on_trialgebra, ennea_from_baxter_on_trialgebra_unchecked, ennea_from_commuting_pair,
    ennea_from_commuting_pair_unchecked, horizontal_vertical, is_nested, opposite_ennea, tensor_ennea, tensor_ennea_unchecked, transpose_ennea,
};
pub use prelie::{
    bracket, check_prelie, prelie_from_trialgebra, prelie_from_trialgebra_unchecked, prelie_pair_from_ennea, PreLieStructure,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialgebraStructure {
    pub prec: Tensor3,
    pub succ: Tensor3,
    pub circ: Tensor3,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_tag: Option<Scalar>,
}

impl TrialgebraStructure {
    pub fn new(prec: Tensor3, succ: Tensor3, circ: Tensor3) -> Result<Self> {
        dim_check("succ dimension", prec.dim(), succ.dim())?;
        dim_check("circ dimension", prec.dim(), circ.dim())?;
        Ok(TrialgebraStructure { prec, succ, circ, t_tag: None })
    }

    pub fn zero(n: usize) -> Self {
        TrialgebraStructure { prec: Tensor3::zeros(n), succ: Tensor3::zeros(n), circ: Tensor3::zeros(n), t_tag: None }
    }

    pub fn dim(&self) -> usize {
        self.prec.dim()
    }

    /// `⋆ = ≺ + ≻ + ∘`.
    pub fn star(&self) -> Tensor3 {
        let one = Scalar::one();
        op_combine(&[(one.clone(), &self.prec), (one.clone(), &self.succ), (one, &self.circ)]).expect("dims checked")
    }

    /// Same `≺`, `≻` with `∘` replaced by `c·∘`.
    pub fn scale_circ(&self, c: &Scalar) -> Self {
        TrialgebraStructure { circ: self.circ.scale(c), ..self.clone() }
    }

    /// `x ≺' y = y ≻ x`, `x ≻' y = y ≺ x`, `x ∘' y = y ∘ x`.
    pub fn opposite(&self) -> Self {
        TrialgebraStructure {
            prec: self.succ.opposite(),
            succ: self.prec.opposite(),
            circ: self.circ.opposite(),
            t_tag: self.t_tag.clone(),
        }
    }

    pub fn ops(&self) -> BTreeMap<String, Tensor3> {
        [("prec", &self.prec), ("succ", &self.succ), ("circ", &self.circ)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }
}

/// The seven trialgebra axioms on all basis triples; witnesses name the
/// relation index 1..7.
pub fn check_trialgebra(s: &TrialgebraStructure) -> CheckReport {
    table::tridend().check(s.dim(), &s.ops(), &Scalar::one()).expect("dims checked at construction")
}

/// Nine operations and the parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnneaStructure {
    pub t: Scalar,
    pub nw: Tensor3,
    pub ne: Tensor3,
    pub sw: Tensor3,
    pub se: Tensor3,
    pub up: Tensor3,
    pub down: Tensor3,
    pub prec: Tensor3,
    pub succ: Tensor3,
    pub circ: Tensor3,
}

impl EnneaStructure {
    pub fn zero(n: usize, t: Scalar) -> Self {
        let z = Tensor3::zeros(n);
        EnneaStructure {
            t,
            nw: z.clone(),
            ne: z.clone(),
            sw: z.clone(),
            se: z.clone(),
            up: z.clone(),
            down: z.clone(),
            prec: z.clone(),
            succ: z.clone(),
            circ: z,
        }
    }

    /// Builds from named operations; missing names are zero.
    pub fn from_ops(n: usize, t: Scalar, ops: &BTreeMap<String, Tensor3>) -> Result<Self> {
        let mut e = EnneaStructure::zero(n, t);
        for (name, op) in ops {
            dim_check(&format!("operation {name}"), n, op.dim())?;
            *e.op_mut(name)
                .ok_or_else(|| crate::Error::Invalid(format!("unknown ennea operation {name:?}")))? = op.clone();
        }
        Ok(e)
    }

    pub fn dim(&self) -> usize {
        self.nw.dim()
    }

    pub fn op(&self, name: &str) -> Option<&Tensor3> {
        Some(match name {
            "nw" => &self.nw,
            "ne" => &self.ne,
            "sw" => &self.sw,
            "se" => &self.se,
            "up" => &self.up,
            "down" => &self.down,
            "prec" => &self.prec,
            "succ" => &self.succ,
            "circ" => &self.circ,
            _ => return None,
        })
    }

    fn op_mut(&mut self, name: &str) -> Option<&mut Tensor3> {
        Some(match name {
            "nw" => &mut self.nw,
            "ne" => &mut self.ne,
            "sw" => &mut self.sw,
            "se" => &mut self.se,
            "up" => &mut self.up,
            "down" => &mut self.down,
            "prec" => &mut self.prec,
            "succ" => &mut self.succ,
            "circ" => &mut self.circ,
            _ => return None,
        })
    }

    pub fn ops(&self) -> BTreeMap<String, Tensor3> {
        table::ENNEA_GENERATORS.iter().map(|n| (n.to_string(), self.op(n).expect("known").clone())).collect()
    }

    fn sum(&self, parts: &[(Scalar, &Tensor3)]) -> Tensor3 {
        op_combine(parts).expect("dims agree")
    }

    /// `▷ = ↗ + ↘ + t≻`
    pub fn rhd(&self) -> Tensor3 {
        let one = Scalar::one();
        self.sum(&[(one.clone(), &self.ne), (one, &self.se), (self.t.clone(), &self.succ)])
    }

    /// `◁ = ↖ + ↙ + t≺`
    pub fn lhd(&self) -> Tensor3 {
        let one = Scalar::one();
        self.sum(&[(one.clone(), &self.nw), (one, &self.sw), (self.t.clone(), &self.prec)])
    }

    /// `∘̄ = ↑ + ↓ + t∘`
    pub fn cbar(&self) -> Tensor3 {
        let one = Scalar::one();
        self.sum(&[(one.clone(), &self.up), (one, &self.down), (self.t.clone(), &self.circ)])
    }

    /// `∨ = ↘ + ↙ + ↓`
    pub fn vee(&self) -> Tensor3 {
        let one = Scalar::one();
        self.sum(&[(one.clone(), &self.se), (one.clone(), &self.sw), (one, &self.down)])
    }

    /// `∧ = ↗ + ↖ + ↑`
    pub fn wedge(&self) -> Tensor3 {
        let one = Scalar::one();
        self.sum(&[(one.clone(), &self.ne), (one.clone(), &self.nw), (one, &self.up)])
    }

    /// `⋆ = ≻ + ≺ + ∘`
    pub fn star(&self) -> Tensor3 {
        let one = Scalar::one();
        self.sum(&[(one.clone(), &self.succ), (one.clone(), &self.prec), (one, &self.circ)])
    }

    /// `⋆̄ = ▷ + ◁ + ∘̄`
    pub fn bstar(&self) -> Tensor3 {
        let one = Scalar::one();
        self.sum(&[(one.clone(), &self.rhd()), (one.clone(), &self.lhd()), (one, &self.cbar())])
    }

    /// The underlying trialgebra `(≺, ≻, ∘)`.
    pub fn trialgebra(&self) -> TrialgebraStructure {
        TrialgebraStructure { prec: self.prec.clone(), succ: self.succ.clone(), circ: self.circ.clone(), t_tag: Some(self.t.clone()) }
    }
}

/// All 49 relations on all basis triples. Witnesses are named `block.position`.
pub fn check_ennea(e: &EnneaStructure) -> CheckReport {
    table::ennea().check(e.dim(), &e.ops(), &e.t).expect("dims agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_structures_pass() {
        assert!(check_trialgebra(&TrialgebraStructure::zero(2)).passed());
        let r = check_ennea(&EnneaStructure::zero(2, Scalar::from_int(3)));
        assert!(r.passed());
        assert_eq!(r.checks_run, 49 * 8);
    }

    #[test]
    fn bstar_two_ways() {
        // ▷ + ◁ + ∘̄ = ∧ + ∨ + t⋆ for arbitrary tensors.
        let mut e = EnneaStructure::zero(2, Scalar::new(2, 3));
        for (k, name) in table::ENNEA_GENERATORS.iter().enumerate() {
            e.op_mut(name).unwrap().set(k % 2, (k / 2) % 2, k % 2, Scalar::from_int(k as i64 + 1));
        }
        let v = op_combine(&[(Scalar::one(), &e.wedge()), (Scalar::one(), &e.vee()), (e.t.clone(), &e.star())]).unwrap();
        assert_eq!(e.bstar(), v);
    }
}
