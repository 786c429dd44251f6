//! Quadratic relations between binary operations, shared by the axiom
//! checkers, the operad dimension count and the deformation engine.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{op_combine, Matrix, Scalar, SparseAcc, SparseRows, TPoly, Tensor3};
use crate::report::{CheckReport, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// `(x inner y) outer z`
    Left,
    /// `x outer (y inner z)`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(default = "TPoly::one")]
    pub coeff: TPoly,
    pub shape: Shape,
    pub outer: String,
    pub inner: String,
}

impl Term {
    /// `(x inner y) outer z`, named in reading order.
    pub fn left(inner: &str, outer: &str) -> Term {
        Term { coeff: TPoly::one(), shape: Shape::Left, outer: outer.into(), inner: inner.into() }
    }

    /// `x outer (y inner z)`, named in reading order.
    pub fn right(outer: &str, inner: &str) -> Term {
        Term { coeff: TPoly::one(), shape: Shape::Right, outer: outer.into(), inner: inner.into() }
    }

    pub fn scaled(mut self, c: &TPoly) -> Term {
        self.coeff = &self.coeff * c;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

impl Relation {
    pub fn new(name: impl Into<String>, lhs: Vec<Term>, rhs: Vec<Term>) -> Relation {
        Relation { name: name.into(), lhs, rhs }
    }

    /// Both sides multiplied by `c`.
    pub fn scaled(mut self, c: &TPoly) -> Relation {
        for term in self.lhs.iter_mut().chain(self.rhs.iter_mut()) {
            term.coeff = &term.coeff * c;
        }
        self
    }

    /// Terms of `lhs - rhs`.
    pub fn terms(&self) -> impl Iterator<Item = (bool, &Term)> {
        self.lhs.iter().map(|x| (true, x)).chain(self.rhs.iter().map(|x| (false, x)))
    }

    pub fn is_empty(&self) -> bool {
        self.lhs.is_empty() && self.rhs.is_empty()
    }
}

/// A named linear combination of generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composite {
    pub name: String,
    pub parts: Vec<(TPoly, String)>,
}

impl Composite {
    pub fn new(name: &str, parts: &[(TPoly, &str)]) -> Composite {
        Composite { name: name.into(), parts: parts.iter().map(|(c, g)| (c.clone(), g.to_string())).collect() }
    }
}

/// Generators, composites and quadratic relations of a binary
/// non-symmetric operad.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    #[serde(default)]
    pub name: String,
    pub generators: Vec<String>,
    #[serde(default)]
    pub composites: Vec<Composite>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for g in self.generators.iter().chain(self.composites.iter().map(|c| &c.name)) {
            if !seen.insert(g.as_str()) {
                return Err(Error::Invalid(format!("operation name {g:?} declared twice")));
            }
        }
        for c in &self.composites {
            for (_, g) in &c.parts {
                if self.generator_index(g).is_none() {
                    return Err(Error::Invalid(format!("composite {:?} references undeclared generator {g:?}", c.name)));
                }
            }
        }
        for r in &self.relations {
            if r.is_empty() {
                return Err(Error::Invalid(format!("relation {:?} has no terms", r.name)));
            }
            for (_, term) in r.terms() {
                for op in [&term.outer, &term.inner] {
                    if !seen.contains(op.as_str()) {
                        return Err(Error::Invalid(format!("relation {:?} references undeclared operation {op:?}", r.name)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn composite(&self, name: &str) -> Option<&Composite> {
        self.composites.iter().find(|c| c.name == name)
    }

    /// Expresses an operation name as generator indices with coefficients.
    pub fn resolve(&self, name: &str) -> Result<Vec<(TPoly, usize)>> {
        if let Some(i) = self.generator_index(name) {
            return Ok(vec![(TPoly::one(), i)]);
        }
        let c = self.composite(name).ok_or_else(|| Error::Invalid(format!("undeclared operation {name:?}")))?;
        c.parts
            .iter()
            .map(|(k, g)| {
                self.generator_index(g)
                    .map(|i| (k.clone(), i))
                    .ok_or_else(|| Error::Invalid(format!("composite {name:?} references undeclared generator {g:?}")))
            })
            .collect()
    }

    /// Size `2g^2` of the degree-3 monomial space.
    pub fn monomial_count(&self) -> usize {
        2 * self.generators.len() * self.generators.len()
    }

    /// Left-nested monomials first, each block ordered by `(outer, inner)`.
    pub fn monomial_index(&self, shape: Shape, outer: usize, inner: usize) -> usize {
        let g = self.generators.len();
        let base = match shape {
            Shape::Left => 0,
            Shape::Right => g * g,
        };
        base + outer * g + inner
    }

    /// `lhs - rhs` as a vector of polynomials in `t` over the monomials.
    pub fn expand(&self, r: &Relation) -> Result<Vec<TPoly>> {
        let mut v = vec![TPoly::zero(); self.monomial_count()];
        for (positive, term) in r.terms() {
            let sign = if positive { TPoly::one() } else { TPoly::from(-1) };
            let c = &term.coeff * &sign;
            for (a, o) in self.resolve(&term.outer)? {
                for (b, i) in self.resolve(&term.inner)? {
                    let x = self.monomial_index(term.shape, o, i);
                    v[x] = &v[x] + &(&c * &(&a * &b));
                }
            }
        }
        Ok(v)
    }

    /// Relation matrix at a fixed value of `t`: one row per relation.
    pub fn relation_matrix(&self, t: &Scalar) -> Result<Matrix> {
        self.validate()?;
        let rows = self
            .relations
            .iter()
            .map(|r| Ok(self.expand(r)?.iter().map(|p| p.eval(t)).collect()))
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        if rows.is_empty() {
            return Ok(Matrix::zeros(0, self.monomial_count()));
        }
        Matrix::from_rows(rows)
    }

    /// Copy with every coefficient evaluated at `t`; vanishing terms, parts
    /// and relations are dropped.
    pub fn specialize(&self, t: &Scalar) -> Presentation {
        let fix = |p: &TPoly| TPoly::constant(p.eval(t));
        let composites = self
            .composites
            .iter()
            .map(|c| Composite {
                name: c.name.clone(),
                parts: c.parts.iter().map(|(k, g)| (fix(k), g.clone())).filter(|(k, _)| !k.is_zero()).collect(),
            })
            .collect();
        let side = |ts: &[Term]| -> Vec<Term> {
            ts.iter()
                .map(|x| Term { coeff: fix(&x.coeff), ..x.clone() })
                .filter(|x| !x.coeff.is_zero())
                .collect()
        };
        let mut p = Presentation {
            name: self.name.clone(),
            generators: self.generators.clone(),
            composites,
            relations: self.relations.iter().map(|r| Relation::new(r.name.clone(), side(&r.lhs), side(&r.rhs))).collect(),
        };
        p.prune();
        p
    }

    /// Keeps only the listed generators, setting the others to zero.
    pub fn restrict(&self, keep: &[&str]) -> Result<Presentation> {
        for k in keep {
            if self.generator_index(k).is_none() {
                return Err(Error::Invalid(format!("cannot keep undeclared generator {k:?}")));
            }
        }
        let generators = self.generators.iter().filter(|g| keep.contains(&g.as_str())).cloned().collect();
        let composites = self
            .composites
            .iter()
            .map(|c| Composite {
                name: c.name.clone(),
                parts: c.parts.iter().filter(|(_, g)| keep.contains(&g.as_str())).cloned().collect(),
            })
            .collect();
        let mut p = Presentation { name: self.name.clone(), generators, composites, relations: self.relations.clone() };
        p.prune();
        Ok(p)
    }

    fn op_is_empty(&self, name: &str) -> bool {
        self.generator_index(name).is_none() && self.composite(name).is_none_or(|c| c.parts.is_empty())
    }

    /// Drops empty composites' terms and relations with no remaining terms.
    fn prune(&mut self) {
        let relations = std::mem::take(&mut self.relations);
        self.relations = relations
            .into_iter()
            .map(|r| {
                let keep = |x: &Term| !x.coeff.is_zero() && !self.op_is_empty(&x.outer) && !self.op_is_empty(&x.inner);
                Relation { name: r.name, lhs: r.lhs.into_iter().filter(keep).collect(), rhs: r.rhs.into_iter().filter(keep).collect() }
            })
            .filter(|r| !r.is_empty())
            .collect();
        self.composites.retain(|c| !c.parts.is_empty());
    }

    /// Checks every relation on all basis triples of the given operations.
    /// Generators absent from `ops` are zero.
    pub fn check(&self, dim: usize, ops: &BTreeMap<String, Tensor3>, t: &Scalar) -> Result<CheckReport> {
        self.check_on(dim, ops, t, dim)
    }

    /// As [`Presentation::check`], with each variable ranging over the first
    /// `domain` basis vectors only.
    pub fn check_on(&self, dim: usize, ops: &BTreeMap<String, Tensor3>, t: &Scalar, domain: usize) -> Result<CheckReport> {
        self.validate()?;
        let evaluator = Evaluator::new(self, dim, ops, t)?;
        let mut report = CheckReport::new();
        for r in &self.relations {
            evaluator.check_relation(r, domain, &mut report)?;
        }
        Ok(report)
    }
}

/// Operation tensors in sparse form, with composites evaluated at a fixed `t`.
pub struct Evaluator {
    dim: usize,
    t: Scalar,
    rows: HashMap<String, SparseRows>,
}

impl Evaluator {
    pub fn new(p: &Presentation, dim: usize, ops: &BTreeMap<String, Tensor3>, t: &Scalar) -> Result<Evaluator> {
        for (name, op) in ops {
            if p.generator_index(name).is_none() {
                return Err(Error::Invalid(format!("operation {name:?} is not a generator of {:?}", p.name)));
            }
            crate::error::dim_check(&format!("operation {name}"), dim, op.dim())?;
        }
        let zero = Tensor3::zeros(dim);
        let gen = |g: &str| ops.get(g).unwrap_or(&zero);
        let mut rows = HashMap::new();
        for g in &p.generators {
            rows.insert(g.clone(), gen(g).sparse_rows());
        }
        for c in &p.composites {
            let parts: Vec<(Scalar, &Tensor3)> = c.parts.iter().map(|(k, g)| (k.eval(t), gen(g))).collect();
            let tensor = if parts.is_empty() { Tensor3::zeros(dim) } else { op_combine(&parts)? };
            rows.insert(c.name.clone(), tensor.sparse_rows());
        }
        Ok(Evaluator { dim, t: t.clone(), rows })
    }

    pub fn rows(&self, name: &str) -> Option<&SparseRows> {
        self.rows.get(name)
    }

    /// Adds `sign * coeff * term(e_i, e_j, e_k)` into `acc`.
    fn add_term(&self, acc: &mut SparseAcc, coeff: &Scalar, term: &Term, (i, j, k): (usize, usize, usize)) {
        let outer = &self.rows[&term.outer];
        let inner = &self.rows[&term.inner];
        match term.shape {
            Shape::Left => {
                for (p, c) in inner.row(i, j) {
                    let cc = coeff * c;
                    for (q, d) in outer.row(*p, k) {
                        acc.add_owned(*q, &cc * d);
                    }
                }
            }
            Shape::Right => {
                for (p, c) in inner.row(j, k) {
                    let cc = coeff * c;
                    for (q, d) in outer.row(i, *p) {
                        acc.add_owned(*q, &cc * d);
                    }
                }
            }
        }
    }

    /// One side of a relation at a basis triple.
    pub fn side(&self, terms: &[Term], triple: (usize, usize, usize)) -> Vec<Scalar> {
        let mut acc = SparseAcc::new(self.dim);
        for term in terms {
            let c = term.coeff.eval(&self.t);
            if !c.is_zero() {
                self.add_term(&mut acc, &c, term, triple);
            }
        }
        acc.to_dense()
    }

    fn check_relation(&self, r: &Relation, domain: usize, report: &mut CheckReport) -> Result<()> {
        let mut terms = Vec::new();
        for (positive, term) in r.terms() {
            let c = term.coeff.eval(&self.t);
            if c.is_zero() {
                continue;
            }
            let outer = self.rows.get(&term.outer).ok_or_else(|| Error::Invalid(format!("unknown operation {:?}", term.outer)))?;
            let inner = self.rows.get(&term.inner).ok_or_else(|| Error::Invalid(format!("unknown operation {:?}", term.inner)))?;
            if outer.is_zero() || inner.is_zero() {
                continue;
            }
            terms.push((if positive { c } else { -c }, term));
        }
        let mut acc = SparseAcc::new(self.dim);
        let mut witnessed = false;
        for i in 0..domain {
            for j in 0..domain {
                for k in 0..domain {
                    acc.clear();
                    for (c, term) in &terms {
                        self.add_term(&mut acc, c, term, (i, j, k));
                    }
                    if acc.is_zero() {
                        report.record_pass();
                    } else if witnessed {
                        report.record_repeat_fail();
                    } else {
                        witnessed = true;
                        report.record_fail(Witness {
                            context: format!("relation {}", r.name),
                            tuple: vec![i, j, k],
                            lhs: self.side(&r.lhs, (i, j, k)),
                            rhs: self.side(&r.rhs, (i, j, k)),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Printable symbol for an operation name; a trailing `1` marks a labeled copy.
pub fn op_symbol(name: &str) -> String {
    let base = |n: &str| -> Option<&'static str> {
        Some(match n {
            "nw" => "↖",
            "ne" => "↗",
            "sw" => "↙",
            "se" => "↘",
            "up" => "↑",
            "down" => "↓",
            "prec" => "≺",
            "succ" => "≻",
            "circ" => "∘",
            "rhd" => "▷",
            "lhd" => "◁",
            "cbar" => "∘̄",
            "vee" => "∨",
            "wedge" => "∧",
            "star" => "⋆",
            "bstar" => "⋆̄",
            _ => return None,
        })
    };
    if let Some(s) = base(name) {
        return s.to_string();
    }
    if let Some(s) = name.strip_suffix('1').and_then(base) {
        return format!("{s}₁");
    }
    name.to_string()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != TPoly::one() {
            if self.coeff.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                write!(f, "({}) ", self.coeff)?;
            } else {
                write!(f, "{} ", self.coeff)?;
            }
        }
        let (o, i) = (op_symbol(&self.outer), op_symbol(&self.inner));
        match self.shape {
            Shape::Left => write!(f, "(x {i} y) {o} z"),
            Shape::Right => write!(f, "x {o} (y {i} z)"),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |ts: &[Term]| -> String {
            if ts.is_empty() {
                "0".into()
            } else {
                ts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" + ")
            }
        };
        write!(f, "[{}] {} = {}", self.name, side(&self.lhs), side(&self.rhs))
    }
}
