//! Linear deformations `op ↦ op₀ + h·op₁`: the per-degree conditions they
//! impose, instances built from Baxter operators, and checks over `k[h]/h^N`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, LinearOperator};
use crate::baxter::{check_mixed_coassociativity, trialgebra_from_operator, CoalgebraData};
use crate::bialgebra::{check_eps_bialgebra, convolution_structure_unchecked, EpsilonBialgebra};
use crate::error::{dim_check, Error, Result};
use crate::exactlin::{Scalar, Tensor3};
use crate::relations::{Composite, Presentation, Relation, Term};
use crate::report::CheckReport;
use crate::splitting::{ennea_from_commuting_pair_unchecked, table};

/// Name of the order-one copy of an operation.
pub fn labeled(name: &str) -> String {
    format!("{name}1")
}

/// Which generators carry a base operation and which an order-one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub base: Vec<bool>,
    pub order1: Vec<bool>,
}

impl Labeling {
    pub fn full(p: &Presentation) -> Labeling {
        let g = p.generator_count();
        Labeling { base: vec![true; g], order1: vec![true; g] }
    }

    /// Every generator deformed; the listed ones start from zero.
    pub fn without_base(p: &Presentation, zero_base: &[&str]) -> Result<Labeling> {
        for z in zero_base {
            if p.generator_index(z).is_none() {
                return Err(Error::Invalid(format!("undeclared generator {z:?}")));
            }
        }
        let base = p.generators.iter().map(|g| !zero_base.contains(&g.as_str())).collect();
        Ok(Labeling { base, order1: vec![true; p.generator_count()] })
    }
}

/// The expanded relations, grouped by power of `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformedSystem {
    pub labeling: Labeling,
    /// Base and labeled generators with every degree's relations.
    pub presentation: Presentation,
    pub degrees: Vec<Vec<Relation>>,
}

impl DeformedSystem {
    /// The same operations with only the degree-`d` conditions.
    pub fn degree(&self, d: usize) -> Presentation {
        Presentation {
            name: format!("{} [h^{d}]", self.presentation.name),
            relations: self.degrees.get(d).cloned().unwrap_or_default(),
            ..self.presentation.clone()
        }
    }
}

fn degree_name(name: &str, d: usize) -> String {
    if d == 0 {
        name.to_string()
    } else {
        format!("{name} h^{d}")
    }
}

/// Substitutes `op₀ + h·op₁` into every relation and collects the coefficient
/// of `h^d` for `d = 0, 1, 2`. Terms whose operation has no part of the
/// required order are dropped, as are conditions left with no terms.
pub fn cross_term_system(p: &Presentation, labeling: &Labeling) -> Result<DeformedSystem> {
    p.validate()?;
    let g = p.generator_count();
    if labeling.base.len() != g || labeling.order1.len() != g {
        return Err(Error::Dimension(format!("labeling of length {}/{} for {g} generators", labeling.base.len(), labeling.order1.len())));
    }
    let enabled = |name: &str, order: usize| {
        p.generator_index(name).is_some_and(|i| if order == 0 { labeling.base[i] } else { labeling.order1[i] })
    };
    let mut generators: Vec<String> = p.generators.iter().filter(|x| enabled(x, 0)).cloned().collect();
    generators.extend(p.generators.iter().filter(|x| enabled(x, 1)).map(|x| labeled(x)));
    let mut composites = Vec::new();
    for order in 0..2 {
        for c in &p.composites {
            let parts: Vec<_> = c
                .parts
                .iter()
                .filter(|(_, x)| enabled(x, order))
                .map(|(k, x)| (k.clone(), if order == 0 { x.clone() } else { labeled(x) }))
                .collect();
            if !parts.is_empty() {
                let name = if order == 0 { c.name.clone() } else { labeled(&c.name) };
                composites.push(Composite { name, parts });
            }
        }
    }
    let mut q = Presentation { name: format!("{} deformed", p.name), generators, composites, relations: vec![] };
    let version = |q: &Presentation, name: &str, order: usize| -> Option<String> {
        let v = if order == 0 { name.to_string() } else { labeled(name) };
        (q.generator_index(&v).is_some() || q.composite(&v).is_some()).then_some(v)
    };
    let mut degrees = vec![Vec::new(); 3];
    for (d, out) in degrees.iter_mut().enumerate() {
        for r in &p.relations {
            let side = |terms: &[Term]| -> Vec<Term> {
                let mut v = Vec::new();
                for term in terms {
                    for a in 0..2 {
                        if d < a || d - a > 1 {
                            continue;
                        }
                        if let (Some(outer), Some(inner)) = (version(&q, &term.outer, a), version(&q, &term.inner, d - a)) {
                            v.push(Term { coeff: term.coeff.clone(), shape: term.shape, outer, inner });
                        }
                    }
                }
                v
            };
            let rel = Relation::new(degree_name(&r.name, d), side(&r.lhs), side(&r.rhs));
            if !rel.is_empty() {
                out.push(rel);
            }
        }
    }
    q.relations = degrees.concat();
    Ok(DeformedSystem { labeling: labeling.clone(), presentation: q, degrees })
}

/// Base and order-one tensors per generator; `None` is a symbolic zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationAssignment {
    pub dim: usize,
    pub generators: Vec<String>,
    pub base: Vec<Option<Tensor3>>,
    pub order1: Vec<Option<Tensor3>>,
}

impl DeformationAssignment {
    pub fn new(dim: usize, generators: Vec<String>, base: Vec<Option<Tensor3>>, order1: Vec<Option<Tensor3>>) -> Result<Self> {
        let g = generators.len();
        if base.len() != g || order1.len() != g {
            return Err(Error::Dimension(format!("{} base and {} order-one tensors for {g} generators", base.len(), order1.len())));
        }
        for (name, x) in generators.iter().zip(base.iter().chain(order1.iter()).flatten()) {
            dim_check(&format!("operation {name}"), dim, x.dim())?;
        }
        for x in base.iter().chain(order1.iter()).flatten() {
            dim_check("operation", dim, x.dim())?;
        }
        Ok(DeformationAssignment { dim, generators, base, order1 })
    }

    pub fn labeling(&self) -> Labeling {
        Labeling { base: self.base.iter().map(Option::is_some).collect(), order1: self.order1.iter().map(Option::is_some).collect() }
    }

    /// Tensors named as in [`cross_term_system`].
    pub fn ops(&self) -> BTreeMap<String, Tensor3> {
        let mut m = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if let Some(x) = &self.base[i] {
                m.insert(g.clone(), x.clone());
            }
            if let Some(x) = &self.order1[i] {
                m.insert(labeled(g), x.clone());
            }
        }
        m
    }

    /// Every order-one tensor multiplied by `tau`.
    pub fn scale_order1(&self, tau: &Scalar) -> Self {
        let order1 = self.order1.iter().map(|x| x.as_ref().map(|x| x.scale(tau))).collect();
        DeformationAssignment { order1, ..self.clone() }
    }

    /// The same base with zero order-one terms.
    pub fn trivial(&self) -> Self {
        let order1 = self.base.iter().map(|_| Some(Tensor3::zeros(self.dim))).collect();
        DeformationAssignment { order1, ..self.clone() }
    }
}

/// Checks a system produced by [`cross_term_system`] on an assignment.
pub fn check_system_on_instance(a: &DeformationAssignment, system: &Presentation, t: &Scalar) -> Result<CheckReport> {
    let ops: BTreeMap<String, Tensor3> = a.ops().into_iter().filter(|(k, _)| system.generator_index(k).is_some()).collect();
    system.check(a.dim, &ops, t)
}

/// Each generator as a polynomial in `h` with tensor coefficients, modulo `h^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedDeformedStructure {
    pub dim: usize,
    pub order: usize,
    pub ops: BTreeMap<String, Vec<Tensor3>>,
}

impl TruncatedDeformedStructure {
    pub fn new(a: &DeformationAssignment, order: usize) -> Self {
        let zero = Tensor3::zeros(a.dim);
        let ops = a
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut coeffs = vec![a.base[i].clone().unwrap_or_else(|| zero.clone())];
                coeffs.push(a.order1[i].clone().unwrap_or_else(|| zero.clone()));
                coeffs.truncate(order);
                coeffs.resize(order, zero.clone());
                (g.clone(), coeffs)
            })
            .collect();
        TruncatedDeformedStructure { dim: a.dim, order, ops }
    }

    /// The operations on `A ⊗ k[h]/h^N`, where `e_i h^a` has index `a n + i`.
    pub fn flatten(&self) -> BTreeMap<String, Tensor3> {
        let (n, big) = (self.dim, self.dim * self.order);
        self.ops
            .iter()
            .map(|(g, coeffs)| {
                let mut x = Tensor3::zeros(big);
                for (c, tensor) in coeffs.iter().enumerate() {
                    for (i, j, k, v) in tensor.entries() {
                        for a in 0..self.order {
                            for b in 0..self.order - a {
                                if a + b + c < self.order {
                                    x.add_at(a * n + i, b * n + j, (a + b + c) * n + k, v);
                                }
                            }
                        }
                    }
                }
                (g.clone(), x)
            })
            .collect()
    }
}

/// Checks the target axioms for the deformed operations identically in `h`
/// modulo `h^N`, on all basis triples of `A`.
pub fn deformed_structure_check(a: &DeformationAssignment, target: &Presentation, order: usize, t: &Scalar) -> Result<CheckReport> {
    if order < 3 {
        return Err(Error::Invalid(format!("truncation order {order} < 3")));
    }
    let s = TruncatedDeformedStructure::new(a, order);
    let ops: BTreeMap<String, Tensor3> = s.flatten().into_iter().filter(|(k, _)| target.generator_index(k).is_some()).collect();
    let mut r = target.check_on(a.dim * order, &ops, t, a.dim)?;
    r.note(format!("checked modulo h^{order}"));
    Ok(r)
}

/// The axiom systems that Baxter data can deform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeformationSource {
    /// Dendriform dialgebra deformed into a trialgebra (base `∘` is zero).
    #[serde(rename = "syst1")]
    Dialgebra,
    #[serde(rename = "syst2")]
    Trialgebra,
    #[serde(rename = "syst3")]
    Quadri,
    #[serde(rename = "syst4")]
    Ennea,
}

impl DeformationSource {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "syst1" => DeformationSource::Dialgebra,
            "syst2" => DeformationSource::Trialgebra,
            "syst3" => DeformationSource::Quadri,
            "syst4" => DeformationSource::Ennea,
            _ => return Err(Error::Unknown(format!("system {s:?}"))),
        })
    }

    /// The axioms the deformed operations must satisfy.
    pub fn target(self) -> Presentation {
        match self {
            DeformationSource::Dialgebra | DeformationSource::Trialgebra => table::tridend(),
            DeformationSource::Quadri => table::quadri(),
            DeformationSource::Ennea => table::ennea(),
        }
    }

    pub fn labeling(self) -> Labeling {
        let p = self.target();
        match self {
            DeformationSource::Dialgebra => Labeling::without_base(&p, &["circ"]).expect("declared"),
            _ => Labeling::full(&p),
        }
    }

    pub fn system(self) -> DeformedSystem {
        cross_term_system(&self.target(), &self.labeling()).expect("built-in tables are valid")
    }
}

/// An algebra with two coproducts: `Δ` of parameter `t` and `Δ₁` of parameter `r1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaxterDeformationData {
    pub alg: FiniteAlgebra,
    pub delta: CoalgebraData,
    pub t: Scalar,
    pub delta1: CoalgebraData,
    pub r1: Scalar,
}

impl BaxterDeformationData {
    fn first(&self) -> EpsilonBialgebra {
        EpsilonBialgebra { alg: self.alg.clone(), delta: self.delta.clone(), t: self.t.clone() }
    }

    fn second(&self) -> EpsilonBialgebra {
        EpsilonBialgebra { alg: self.alg.clone(), delta: self.delta1.clone(), t: self.r1.clone() }
    }

    /// The two bialgebra conditions and the two mixed coassociativity conditions.
    pub fn hypotheses(&self, source: DeformationSource) -> Result<CheckReport> {
        dim_check("first coproduct", self.alg.dim(), self.delta.dim)?;
        dim_check("second coproduct", self.alg.dim(), self.delta1.dim)?;
        let zero = Scalar::zero();
        let params_ok = match source {
            DeformationSource::Dialgebra => self.t.is_zero(),
            DeformationSource::Trialgebra => !self.t.is_zero() && !self.r1.is_zero(),
            DeformationSource::Quadri => self.t == zero && self.r1 == zero,
            DeformationSource::Ennea => self.t == self.r1,
        };
        let mut r = CheckReport::new();
        if !params_ok {
            r.merge(CheckReport::failing(format!("parameters t = {}, r1 = {} not allowed for {source:?}", self.t, self.r1)));
        }
        r.merge_prefixed("condition 1", check_eps_bialgebra(&self.first()));
        r.merge_prefixed("condition 2", check_eps_bialgebra(&self.second()));
        r.merge(check_mixed_coassociativity(&self.delta1, &self.delta, "condition 3"));
        r.merge(check_mixed_coassociativity(&self.delta, &self.delta1, "condition 4"));
        Ok(r)
    }

    /// `β`, `γ` from `Δ` and `β₁` from `Δ₁`, on End(A).
    pub fn operators(&self) -> Result<(FiniteAlgebra, LinearOperator, LinearOperator, LinearOperator)> {
        let c = convolution_structure_unchecked(&self.first())?;
        let c1 = convolution_structure_unchecked(&self.second())?;
        Ok((c.end_alg, c.beta, c.gamma, c1.beta))
    }
}

/// `β(Tβ₁(S)) + β(β₁(T)S) + r₁β(TS) + rβ₁(TS) + β₁(Tβ(S)) + β₁(β(T)S) = β₁(T)β(S) + β(T)β₁(S)`
/// on basis pairs; `r = 0` gives the dialgebra case.
pub fn check_pair_identity(alg: &FiniteAlgebra, beta: &LinearOperator, beta1: &LinearOperator, r: &Scalar, r1: &Scalar) -> Result<CheckReport> {
    dim_check("first operator", alg.dim(), beta.dim())?;
    dim_check("second operator", alg.dim(), beta1.dim())?;
    let n = alg.dim();
    let m = |x: &[Scalar], y: &[Scalar]| alg.product(x, y).expect("dims");
    let ap = |o: &LinearOperator, x: &[Scalar]| o.apply(x).expect("dims");
    let mut rep = CheckReport::new();
    for i in 0..n {
        let x = crate::exactlin::basis_vector(n, i);
        for j in 0..n {
            let y = crate::exactlin::basis_vector(n, j);
            let xy = m(&x, &y);
            let mut lhs = ap(beta, &m(&x, &ap(beta1, &y)));
            let terms = [
                ap(beta, &m(&ap(beta1, &x), &y)),
                crate::exactlin::vec_scale(&ap(beta, &xy), r1),
                crate::exactlin::vec_scale(&ap(beta1, &xy), r),
                ap(beta1, &m(&x, &ap(beta, &y))),
                ap(beta1, &m(&ap(beta, &x), &y)),
            ];
            for t in &terms {
                lhs = crate::exactlin::vec_add(&lhs, t);
            }
            let rhs = crate::exactlin::vec_add(&m(&ap(beta1, &x), &ap(beta, &y)), &m(&ap(beta, &x), &ap(beta1, &y)));
            rep.compare(|| "operator pair identity".into(), &[i, j], &lhs, &rhs);
        }
    }
    Ok(rep)
}

/// Operations on End(A) from `β, γ, β₁`, after checking the hypotheses.
pub fn baxter_deformation(source: DeformationSource, data: &BaxterDeformationData) -> Result<DeformationAssignment> {
    let h = data.hypotheses(source)?;
    if !h.passed() {
        return Err(Error::Hypothesis(format!("deformation data for {source:?}:\n{h}")));
    }
    baxter_deformation_unchecked(source, data)
}

pub fn baxter_deformation_unchecked(source: DeformationSource, data: &BaxterDeformationData) -> Result<DeformationAssignment> {
    let (end, beta, gamma, beta1) = data.operators()?;
    let n = end.dim();
    let target = source.target();
    let gens = target.generators.clone();
    let (base, order1): (Vec<Option<Tensor3>>, Vec<Option<Tensor3>>) = match source {
        DeformationSource::Dialgebra | DeformationSource::Trialgebra => {
            let b = trialgebra_from_operator(&end, &beta, &data.t);
            let l = trialgebra_from_operator(&end, &beta1, &data.r1);
            let circ = (source == DeformationSource::Trialgebra).then_some(b.circ);
            (vec![Some(b.prec), Some(b.succ), circ], vec![Some(l.prec), Some(l.succ), Some(l.circ)])
        }
        DeformationSource::Quadri | DeformationSource::Ennea => {
            let b = ennea_from_commuting_pair_unchecked(&end, &beta, &gamma, &data.t)?;
            let l = ennea_from_commuting_pair_unchecked(&end, &beta1, &gamma, &data.r1)?;
            let pick = |e: &crate::splitting::EnneaStructure| -> Vec<Option<Tensor3>> {
                gens.iter().map(|g| e.op(g).cloned()).collect()
            };
            (pick(&b), pick(&l))
        }
    };
    DeformationAssignment::new(n, gens, base, order1)
}

/// `Δ(a) = c · a ⊗ 1`; an ε(−c)-bialgebra on any unital algebra.
pub fn right_unit_coproduct(alg: &FiniteAlgebra, c: &Scalar) -> Result<CoalgebraData> {
    let unit = alg.unit.clone().ok_or_else(|| Error::Invalid("algebra has no unit".into()))?;
    let n = alg.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for (k, u) in unit.iter().enumerate() {
            if !u.is_zero() {
                entries.push((i, i, k, c * u));
            }
        }
    }
    CoalgebraData::from_entries(n, entries)
}
