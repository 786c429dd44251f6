//! A formal unit adjoined to a structure, with partial operations.
//!
//! Elements of `A₊ = k1 ⊕ A` are [`Plus`] values. In tuples, index 0 is the
//! unit and index `i + 1` is `e_i`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{basis_vector, vec_add, vec_is_zero, vec_scale, Scalar, SparseAcc, SparseRows, Tensor3};
use crate::relations::{op_symbol, Evaluator, Presentation, Shape, Term};
use crate::report::{CheckReport, Witness};
use crate::splitting::{table, EnneaStructure};

/// The value of `x◇1` (or `1◇x`) for `x` in `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitValue {
    Identity,
    Zero,
    Undefined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRule {
    /// `x◇1`
    pub right: UnitValue,
    /// `1◇x`
    pub left: UnitValue,
}

impl UnitRule {
    pub const ZERO: UnitRule = UnitRule { right: UnitValue::Zero, left: UnitValue::Zero };

    /// `1◇1` is zero when both actions are zero and undefined otherwise.
    pub fn one_one_defined(&self) -> bool {
        *self == UnitRule::ZERO
    }
}

/// Rules per generator; unlisted generators act by zero on both sides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRules(pub BTreeMap<String, UnitRule>);

impl UnitRules {
    pub fn get(&self, op: &str) -> UnitRule {
        self.0.get(op).copied().unwrap_or(UnitRule::ZERO)
    }

    pub fn set(&mut self, op: &str, rule: UnitRule) {
        self.0.insert(op.to_string(), rule);
    }

    /// `x◇1 = x` for `right_op`, `1◇x = x` for `left_op`, all else zero.
    pub fn pair(right_op: &str, left_op: &str) -> Self {
        let mut r = UnitRules::default();
        r.set(right_op, UnitRule { right: UnitValue::Identity, left: UnitValue::Zero });
        let mut l = r.get(left_op);
        l.left = UnitValue::Identity;
        r.set(left_op, l);
        r
    }

    /// `e↖1 = e`, `1↘e = e`, every other action zero.
    pub fn ennea() -> Self {
        UnitRules::pair("nw", "se")
    }
}

/// Which copy of the operations carries the unit in a deformed family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitChoice {
    /// `x≺1 = x`, `1≻x = x` (the arrows `↖`, `↘` for quadri and ennea families).
    #[serde(rename = "zz")]
    Base,
    /// The same on the order-one operations.
    #[serde(rename = "zz1")]
    Labeled,
}

impl UnitChoice {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "zz" => Ok(UnitChoice::Base),
            "zz1" => Ok(UnitChoice::Labeled),
            _ => Err(Error::Unknown(format!("unit choice {s:?}"))),
        }
    }
}

pub fn deformed_unit_rules(p: &Presentation, choice: UnitChoice) -> Result<UnitRules> {
    let (r, l) = if p.generator_index("nw").is_some() { ("nw", "se") } else { ("prec", "succ") };
    let (r, l) = match choice {
        UnitChoice::Base => (r.to_string(), l.to_string()),
        UnitChoice::Labeled => (format!("{r}1"), format!("{l}1")),
    };
    for g in [&r, &l] {
        if p.generator_index(g).is_none() {
            return Err(Error::Invalid(format!("{:?} has no generator {g:?}", p.name)));
        }
    }
    Ok(UnitRules::pair(&r, &l))
}

/// An element `c·1 + v` of `A₊`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plus {
    pub unit: Scalar,
    pub v: Vec<Scalar>,
}

impl Plus {
    pub fn zero(n: usize) -> Self {
        Plus { unit: Scalar::zero(), v: vec![Scalar::zero(); n] }
    }

    pub fn one(n: usize) -> Self {
        Plus { unit: Scalar::one(), v: vec![Scalar::zero(); n] }
    }

    pub fn from_vec(v: Vec<Scalar>) -> Self {
        Plus { unit: Scalar::zero(), v }
    }

    /// Basis of `A₊`: 0 is the unit, `i + 1` is `e_i`.
    pub fn basis(n: usize, idx: usize) -> Self {
        if idx == 0 {
            Plus::one(n)
        } else {
            Plus::from_vec(basis_vector(n, idx - 1))
        }
    }

    fn add_scaled(&mut self, c: &Scalar, other: &Plus) {
        self.unit += c * &other.unit;
        self.v = vec_add(&self.v, &vec_scale(&other.v, c));
    }

    fn is_zero(&self) -> bool {
        self.unit.is_zero() && vec_is_zero(&self.v)
    }

    /// `[unit, v...]`
    pub fn flat(&self) -> Vec<Scalar> {
        std::iter::once(self.unit.clone()).chain(self.v.iter().cloned()).collect()
    }
}

/// Operations of a presentation on `A₊`, composites included.
struct PlusOps {
    dim: usize,
    rows: HashMap<String, SparseRows>,
    /// Coefficients of `x◇1` and `1◇x`, and whether `1◇1` is defined.
    actions: HashMap<String, (Option<Scalar>, Option<Scalar>, bool)>,
}

fn action_scalar(v: UnitValue) -> Option<Scalar> {
    match v {
        UnitValue::Identity => Some(Scalar::one()),
        UnitValue::Zero => Some(Scalar::zero()),
        UnitValue::Undefined => None,
    }
}

impl PlusOps {
    fn new(p: &Presentation, dim: usize, ops: &BTreeMap<String, Tensor3>, t: &Scalar, rules: &UnitRules) -> Result<Self> {
        for name in rules.0.keys() {
            if p.generator_index(name).is_none() {
                return Err(Error::Invalid(format!("unit rule for unknown generator {name:?}")));
            }
        }
        let ev = Evaluator::new(p, dim, ops, t)?;
        let mut rows = HashMap::new();
        let mut actions = HashMap::new();
        for g in &p.generators {
            rows.insert(g.clone(), ev.rows(g).expect("generator").clone());
            let r = rules.get(g);
            actions.insert(g.clone(), (action_scalar(r.right), action_scalar(r.left), r.one_one_defined()));
        }
        for c in &p.composites {
            rows.insert(c.name.clone(), ev.rows(&c.name).expect("composite").clone());
            let (mut right, mut left, mut both) = (Some(Scalar::zero()), Some(Scalar::zero()), true);
            for (k, g) in &c.parts {
                let k = k.eval(t);
                if k.is_zero() {
                    continue;
                }
                let r = rules.get(g);
                right = right.zip(action_scalar(r.right)).map(|(a, b)| a + &k * b);
                left = left.zip(action_scalar(r.left)).map(|(a, b)| a + &k * b);
                both &= r.one_one_defined();
            }
            actions.insert(c.name.clone(), (right, left, both));
        }
        Ok(PlusOps { dim, rows, actions })
    }

    fn bilinear(&self, op: &str, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let rows = &self.rows[op];
        let mut acc = SparseAcc::new(self.dim);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in rows.row(i, j) {
                    acc.add_owned(*k, &ab * c);
                }
            }
        }
        acc.to_dense()
    }

    /// `None` when an undefined unit action is needed.
    fn apply(&self, op: &str, a: &Plus, b: &Plus) -> Option<Plus> {
        let (right, left, one_one) = &self.actions[op];
        let mut out = Plus::from_vec(self.bilinear(op, &a.v, &b.v));
        if !b.unit.is_zero() && !vec_is_zero(&a.v) {
            out.v = vec_add(&out.v, &vec_scale(&a.v, &(right.as_ref()? * &b.unit)));
        }
        if !a.unit.is_zero() && !vec_is_zero(&b.v) {
            out.v = vec_add(&out.v, &vec_scale(&b.v, &(left.as_ref()? * &a.unit)));
        }
        if !a.unit.is_zero() && !b.unit.is_zero() && !one_one {
            return None;
        }
        Some(out)
    }

    fn term(&self, term: &Term, x: &[Plus; 3]) -> Option<Plus> {
        match term.shape {
            Shape::Left => self.apply(&term.outer, &self.apply(&term.inner, &x[0], &x[1])?, &x[2]),
            Shape::Right => self.apply(&term.outer, &x[0], &self.apply(&term.inner, &x[1], &x[2])?),
        }
    }

    fn side(&self, terms: &[(Scalar, &Term)], x: &[Plus; 3]) -> Option<Plus> {
        let mut acc = Plus::zero(self.dim);
        for (c, term) in terms {
            acc.add_scaled(c, &self.term(term, x)?);
        }
        Some(acc)
    }
}

/// A structure on `A` with a formal unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedStructure {
    pub presentation: Presentation,
    pub dim: usize,
    pub ops: BTreeMap<String, Tensor3>,
    pub t: Scalar,
    pub rules: UnitRules,
}

impl AugmentedStructure {
    pub fn ennea(e: &EnneaStructure, rules: UnitRules) -> Self {
        AugmentedStructure { presentation: table::ennea(), dim: e.dim(), ops: e.ops(), t: e.t.clone(), rules }
    }

    /// Coefficients `c` in `x◇1 = c·x` and `1◇x = c·x`; `None` is undefined.
    pub fn unit_actions(&self, op: &str) -> Result<(Option<Scalar>, Option<Scalar>)> {
        let p = PlusOps::new(&self.presentation, self.dim, &self.ops, &self.t, &self.rules)?;
        let (r, l, _) = p.actions.get(op).ok_or_else(|| Error::Unknown(format!("operation {op:?}")))?;
        Ok((r.clone(), l.clone()))
    }
}

fn coeff_str(c: &Option<Scalar>) -> String {
    match c {
        None => "undefined".into(),
        Some(c) if c.is_zero() => "0".into(),
        Some(c) if c.is_one() => "e".into(),
        Some(c) => format!("{c}e"),
    }
}

type SignedTerms<'a> = Vec<(Scalar, &'a Term)>;

fn signed_terms<'a>(p: &'a Presentation, name: &str, t: &Scalar) -> Vec<(SignedTerms<'a>, SignedTerms<'a>)> {
    p.relations
        .iter()
        .filter(|r| r.name == name)
        .map(|r| {
            let keep = |ts: &'a [Term]| ts.iter().map(|x| (x.coeff.eval(t), x)).filter(|(c, _)| !c.is_zero()).collect();
            (keep(&r.lhs), keep(&r.rhs))
        })
        .collect()
}

/// Every relation on every tuple of `A₊` basis elements. Tuples needing an
/// undefined subterm are skipped and counted.
pub fn check_compatibility(a: &AugmentedStructure) -> Result<CheckReport> {
    let ops = PlusOps::new(&a.presentation, a.dim, &a.ops, &a.t, &a.rules)?;
    // Unit-free tuples only involve the operations on A.
    let ev = Evaluator::new(&a.presentation, a.dim, &a.ops, &a.t)?;
    let n = a.dim;
    let basis: Vec<Plus> = (0..=n).map(|i| Plus::basis(n, i)).collect();
    let mut rep = CheckReport::new();
    for r in &a.presentation.relations {
        let (lhs, rhs) = signed_terms(&a.presentation, &r.name, &a.t).remove(0);
        let mut witnessed = false;
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    let sides = if i > 0 && j > 0 && k > 0 {
                        let t = (i - 1, j - 1, k - 1);
                        (Some(Plus::from_vec(ev.side(&r.lhs, t))), Some(Plus::from_vec(ev.side(&r.rhs, t))))
                    } else {
                        let x = [basis[i].clone(), basis[j].clone(), basis[k].clone()];
                        (ops.side(&lhs, &x), ops.side(&rhs, &x))
                    };
                    match sides {
                        (Some(l), Some(rr)) if l == rr => rep.record_pass(),
                        (Some(l), Some(rr)) => {
                            if witnessed {
                                rep.record_repeat_fail();
                            } else {
                                witnessed = true;
                                rep.record_fail(Witness { context: format!("relation {} on A₊", r.name), tuple: vec![i, j, k], lhs: l.flat(), rhs: rr.flat() });
                            }
                        }
                        _ => rep.record_skip(),
                    }
                }
            }
        }
    }
    for c in &a.presentation.composites {
        let (r, l, _) = &ops.actions[&c.name];
        let s = op_symbol(&c.name);
        rep.note(format!("e{s}1 = {}, 1{s}e = {}", coeff_str(r), coeff_str(l)));
    }
    Ok(rep)
}

/// Compatibility under a deformed-family unit choice, plus unitality of the
/// total product (the sum of the base and order-one products).
pub fn check_deformed_operad_units(p: &Presentation, dim: usize, ops: &BTreeMap<String, Tensor3>, t: &Scalar, choice: UnitChoice) -> Result<CheckReport> {
    let rules = deformed_unit_rules(p, choice)?;
    let a = AugmentedStructure { presentation: p.clone(), dim, ops: ops.clone(), t: t.clone(), rules };
    let mut rep = check_compatibility(&a)?;
    let total = if p.composite("bstar").is_some() { "bstar" } else { "star" };
    let mut right = Some(Scalar::zero());
    let mut left = Some(Scalar::zero());
    for name in [total.to_string(), format!("{total}1")] {
        if p.composite(&name).is_some() {
            let (r, l) = a.unit_actions(&name)?;
            right = right.zip(r).map(|(a, b)| a + b);
            left = left.zip(l).map(|(a, b)| a + b);
        }
    }
    let one = Some(Scalar::one());
    if right == one && left == one {
        rep.note("total product is unital");
    } else {
        rep.merge(CheckReport::failing(format!("total product: e·1 = {}, 1·e = {}", coeff_str(&right), coeff_str(&left))));
    }
    Ok(rep)
}

/// Layout of `A⊗1 ⊕ 1⊗B ⊕ A⊗B`.
#[derive(Clone, Copy, Debug)]
struct Space {
    na: usize,
    nb: usize,
}

impl Space {
    fn dim(&self) -> usize {
        self.na + self.nb + self.na * self.nb
    }

    /// Space basis index to `(A₊ index, B₊ index)`.
    fn split(&self, s: usize) -> (usize, usize) {
        if s < self.na {
            (s + 1, 0)
        } else if s < self.na + self.nb {
            (0, s - self.na + 1)
        } else {
            let r = s - self.na - self.nb;
            (r / self.nb + 1, r % self.nb + 1)
        }
    }

    /// `Σ u_a ⊗ w_b` as a space vector; the `1⊗1` component must vanish.
    fn flatten(&self, m: &[(Plus, Plus)]) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (u, w) in m {
            if !(u.unit.is_zero() || w.unit.is_zero()) {
                return Err(Error::Invalid("value has a 1⊗1 component".into()));
            }
            for (b, y) in w.v.iter().enumerate() {
                if !y.is_zero() {
                    v[self.na + b] += &u.unit * y;
                }
            }
            for (a, x) in u.v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                v[a] += x * &w.unit;
                for (b, y) in w.v.iter().enumerate() {
                    if !y.is_zero() {
                        v[self.na + self.nb + a * self.nb + b] += x * y;
                    }
                }
            }
        }
        Ok(v)
    }
}

struct Coherence {
    a: PlusOps,
    b: PlusOps,
    space: Space,
    /// `⋆̄` on `A` is associative, so both bracketings of `x1⋆̄x2⋆̄x3` agree.
    assoc: bool,
}

impl Coherence {
    fn new(a: &EnneaStructure, b: &EnneaStructure, rules: &UnitRules) -> Result<Self> {
        if a.t != b.t {
            return Err(Error::Invalid(format!("parameters differ: {} and {}", a.t, b.t)));
        }
        let p = table::ennea();
        let ops = PlusOps::new(&p, a.dim(), &a.ops(), &a.t, &UnitRules::default())?;
        let n = a.dim();
        let e = |i| basis_vector(n, i);
        let assoc = (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| ops.bilinear("bstar", &ops.bilinear("bstar", &e(i), &e(j)), &e(k)) == ops.bilinear("bstar", &e(i), &ops.bilinear("bstar", &e(j), &e(k))))
            })
        });
        Ok(Coherence {
            a: ops,
            b: PlusOps::new(&p, b.dim(), &b.ops(), &b.t, rules)?,
            space: Space { na: a.dim(), nb: b.dim() },
            assoc,
        })
    }

    /// `⋆̄` on `A₊` with `1` as a two-sided unit.
    fn star(&self, u: &Plus, v: &Plus) -> Plus {
        let mut out = Plus::from_vec(self.a.bilinear("bstar", &u.v, &v.v));
        out.unit = &u.unit * &v.unit;
        out.v = vec_add(&out.v, &vec_add(&vec_scale(&v.v, &u.unit), &vec_scale(&u.v, &v.unit)));
        out
    }

    /// `(x⊗y)◇(x′⊗y′)` for pure tensors, as a list of pure tensors.
    fn op(&self, op: &str, (x, y): (&Plus, &Plus), (x2, y2): (&Plus, &Plus)) -> Option<Vec<(Plus, Plus)>> {
        if y.unit.is_one() && vec_is_zero(&y.v) && y2.unit.is_one() && vec_is_zero(&y2.v) {
            let u = self.a.bilinear(op, &x.v, &x2.v);
            return Some(vec![(Plus::from_vec(u), Plus::one(self.space.nb))]);
        }
        Some(vec![(self.star(x, x2), self.b.apply(op, y, y2)?)])
    }
}

/// The structure on `A⊗1 ⊕ 1⊗B ⊕ A⊗B`, built densely. Meant for small
/// dimensions; [`check_coherence`] does not materialize it.
pub fn coherence_structure(a: &EnneaStructure, b: &EnneaStructure, rules: &UnitRules) -> Result<EnneaStructure> {
    let c = Coherence::new(a, b, rules)?;
    let s = c.space;
    let elems: Vec<(Plus, Plus)> = (0..s.dim())
        .map(|i| {
            let (x, y) = s.split(i);
            (Plus::basis(s.na, x), Plus::basis(s.nb, y))
        })
        .collect();
    let mut ops = BTreeMap::new();
    for g in table::ENNEA_GENERATORS {
        let mut x = Tensor3::zeros(s.dim());
        for (i, (xi, yi)) in elems.iter().enumerate() {
            for (j, (xj, yj)) in elems.iter().enumerate() {
                let v = c.op(g, (xi, yi), (xj, yj)).ok_or_else(|| Error::Invalid(format!("undefined {g} at ({i}, {j})")))?;
                for (k, val) in s.flatten(&v)?.into_iter().enumerate() {
                    if !val.is_zero() {
                        x.set(i, j, k, val);
                    }
                }
            }
        }
        ops.insert(g.to_string(), x);
    }
    EnneaStructure::from_ops(s.dim(), a.t.clone(), &ops)
}

/// How a term factors once the `B₊` components of a triple are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Form {
    /// `(x1 ⋆̄ x2) ⋆̄ x3`
    FullLeft,
    /// `x1 ⋆̄ (x2 ⋆̄ x3)`
    FullRight,
    /// `(x1 ◇ x2) ⋆̄ x3`
    LeftInner(String),
    /// `x1 ⋆̄ (x2 ◇ x3)`
    RightInner(String),
    /// `(x1 ◇ x2) ◆ x3`, outer then inner
    LeftBoth(String, String),
    RightBoth(String, String),
}

impl Coherence {
    /// Splits one term at fixed `y` into an `A₊` form and a `B₊` value.
    fn factor(&self, term: &Term, y: &[Plus; 3]) -> Option<(Form, Plus)> {
        let is_one = |p: &Plus| p.unit.is_one() && vec_is_zero(&p.v);
        let nb = self.space.nb;
        let one = Plus::one(nb);
        let (o, i) = (term.outer.clone(), term.inner.clone());
        Some(match term.shape {
            Shape::Left if !(is_one(&y[0]) && is_one(&y[1])) => (Form::FullLeft, self.b.apply(&o, &self.b.apply(&i, &y[0], &y[1])?, &y[2])?),
            Shape::Left if is_one(&y[2]) => (Form::LeftBoth(o, i), one),
            Shape::Left => (Form::LeftInner(i), self.b.apply(&o, &one, &y[2])?),
            Shape::Right if !(is_one(&y[1]) && is_one(&y[2])) => (if self.assoc { Form::FullLeft } else { Form::FullRight }, self.b.apply(&o, &y[0], &self.b.apply(&i, &y[1], &y[2])?)?),
            Shape::Right if is_one(&y[0]) => (Form::RightBoth(o, i), one),
            Shape::Right => (Form::RightInner(i), self.b.apply(&o, &y[0], &one)?),
        })
    }

    fn form(&self, f: &Form, x: &[Plus; 3]) -> Plus {
        let ap = |op: &str, u: &Plus, v: &Plus| Plus::from_vec(self.a.bilinear(op, &u.v, &v.v));
        match f {
            Form::FullLeft => self.star(&self.star(&x[0], &x[1]), &x[2]),
            Form::FullRight => self.star(&x[0], &self.star(&x[1], &x[2])),
            Form::LeftInner(i) => self.star(&ap(i, &x[0], &x[1]), &x[2]),
            Form::RightInner(i) => self.star(&x[0], &ap(i, &x[1], &x[2])),
            Form::LeftBoth(o, i) => ap(o, &ap(i, &x[0], &x[1]), &x[2]),
            Form::RightBoth(o, i) => ap(o, &x[0], &ap(i, &x[1], &x[2])),
        }
    }
}

/// The 49 relations on `A⊗1 ⊕ 1⊗B ⊕ A⊗B`. Tuples are indices into that space
/// (`A⊗1` first, then `1⊗B`, then `A⊗B` row-major).
pub fn check_coherence(a: &EnneaStructure, b: &EnneaStructure, rules: &UnitRules) -> Result<CheckReport> {
    let c = Coherence::new(a, b, rules)?;
    let s = c.space;
    let p = table::ennea();
    let mut rep = CheckReport::new();
    let ybasis: Vec<Plus> = (0..=s.nb).map(|i| Plus::basis(s.nb, i)).collect();
    let xbasis: Vec<Plus> = (0..=s.na).map(|i| Plus::basis(s.na, i)).collect();
    let index = |x: usize, y: usize| -> usize {
        match (x, y) {
            (x, 0) => x - 1,
            (0, y) => s.na + y - 1,
            (x, y) => s.na + s.nb + (x - 1) * s.nb + (y - 1),
        }
    };
    for r in &p.relations {
        let (lhs, rhs) = signed_terms(&p, &r.name, &a.t).remove(0);
        let mut witnessed = false;
        for y0 in 0..=s.nb {
            for y1 in 0..=s.nb {
                for y2 in 0..=s.nb {
                    let ys = [y0, y1, y2];
                    let y = [ybasis[y0].clone(), ybasis[y1].clone(), ybasis[y2].clone()];
                    let xcount: u64 = ys.iter().map(|&v| if v == 0 { s.na as u64 } else { s.na as u64 + 1 }).product();
                    let mut forms: BTreeMap<Form, (Plus, Plus)> = BTreeMap::new();
                    let mut defined = true;
                    for (side, terms) in [(0, &lhs), (1, &rhs)] {
                        for (k, term) in terms.iter() {
                            match c.factor(term, &y) {
                                Some((f, w)) => {
                                    let e = forms.entry(f).or_insert_with(|| (Plus::zero(s.nb), Plus::zero(s.nb)));
                                    if side == 0 { e.0.add_scaled(k, &w) } else { e.1.add_scaled(k, &w) }
                                }
                                None => defined = false,
                            }
                        }
                    }
                    if !defined {
                        rep.record_skips(xcount);
                        continue;
                    }
                    forms.retain(|_, (l, rr)| !(l.is_zero() && rr.is_zero()));
                    if forms.values().all(|(l, rr)| l == rr) {
                        rep.record_passes(xcount);
                        continue;
                    }
                    let range = |v: usize| if v == 0 { 1..=s.na } else { 0..=s.na };
                    for x0 in range(y0) {
                        for x1 in range(y1) {
                            for x2 in range(y2) {
                                let x = [xbasis[x0].clone(), xbasis[x1].clone(), xbasis[x2].clone()];
                                let mut l = Vec::new();
                                let mut rr = Vec::new();
                                for (f, (wl, wr)) in &forms {
                                    let u = c.form(f, &x);
                                    l.push((u.clone(), wl.clone()));
                                    rr.push((u, wr.clone()));
                                }
                                let (l, rr) = (s.flatten(&l)?, s.flatten(&rr)?);
                                if l == rr {
                                    rep.record_pass();
                                } else if witnessed {
                                    rep.record_repeat_fail();
                                } else {
                                    witnessed = true;
                                    let tuple = vec![index(x0, y0), index(x1, y1), index(x2, y2)];
                                    rep.record_fail(Witness { context: format!("relation {} on the tensor space", r.name), tuple, lhs: l, rhs: rr });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}
