//! ε(t)-bialgebras, convolution on End(A), and the structures they induce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{matrix_algebra, FiniteAlgebra, LinearOperator};
use crate::baxter::CoalgebraData;
use crate::error::{dim_check, Error, Result};
use crate::exactlin::{apply_bilinear, basis_vector, vec_add, Matrix, Scalar, Tensor3};
use crate::report::{CheckReport, Witness};
use crate::splitting::{EnneaStructure, PreLieStructure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonBialgebra {
    pub alg: FiniteAlgebra,
    pub delta: CoalgebraData,
    pub t: Scalar,
}

impl EpsilonBialgebra {
    pub fn new(alg: FiniteAlgebra, delta: CoalgebraData, t: Scalar) -> Result<Self> {
        dim_check("coproduct dimension", alg.dim(), delta.dim)?;
        Ok(EpsilonBialgebra { alg, delta, t })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn require_valid(&self) -> Result<()> {
        let r = check_eps_bialgebra(self);
        if r.passed() {
            Ok(())
        } else {
            Err(Error::Hypothesis(format!("not an ε({})-bialgebra:\n{r}", self.t)))
        }
    }
}

/// Coassociativity, then `Δ(ab) = a₍₁₎ ⊗ a₍₂₎b + ab₍₁₎ ⊗ b₍₂₎ + t a ⊗ b` on basis pairs.
pub fn check_eps_bialgebra(b: &EpsilonBialgebra) -> CheckReport {
    let mut r = CheckReport::new();
    if b.alg.dim() != b.delta.dim {
        return CheckReport::failing(format!("algebra dimension {} vs coproduct dimension {}", b.alg.dim(), b.delta.dim));
    }
    r.merge(b.delta.is_coassociative());
    let n = b.dim();
    let sparse = b.delta.sparse();
    let m = &b.alg.mult;
    let mut witnessed = false;
    for i in 0..n {
        for j in 0..n {
            let lhs = b.delta.apply(m.product_of_basis(i, j)).expect("dims");
            let mut rhs = vec![Scalar::zero(); n * n];
            for (p, q, c) in &sparse[i] {
                for (k, v) in m.product_of_basis(*q, j).iter().enumerate() {
                    if !v.is_zero() {
                        rhs[p * n + k] += &(c * v);
                    }
                }
            }
            for (p, q, c) in &sparse[j] {
                for (k, v) in m.product_of_basis(i, *p).iter().enumerate() {
                    if !v.is_zero() {
                        rhs[k * n + q] += &(c * v);
                    }
                }
            }
            rhs[i * n + j] += &b.t;
            if lhs == rhs {
                r.record_pass();
            } else if witnessed {
                r.record_repeat_fail();
            } else {
                witnessed = true;
                r.compare(|| format!("ε({}) compatibility", b.t), &[i, j], &lhs, &rhs);
            }
        }
    }
    r
}

/// End(A) under composition with the convolution product and the operators
/// `β(T) = id ∗ T`, `γ(T) = T ∗ id`. The endomorphism `e_c ↦ e_r` has index `r n + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvolutionStructure {
    pub end_alg: FiniteAlgebra,
    pub conv: Tensor3,
    pub beta: LinearOperator,
    pub gamma: LinearOperator,
}

impl ConvolutionStructure {
    pub fn identity_vector(&self) -> Vec<Scalar> {
        let n = (self.end_alg.dim() as f64).sqrt().round() as usize;
        let mut v = vec![Scalar::zero(); n * n];
        for a in 0..n {
            v[a * n + a] = Scalar::one();
        }
        v
    }
}

/// `T ∗ S = μ(T ⊗ S)Δ` on the basis of End(A).
pub fn convolution_tensor(alg: &FiniteAlgebra, delta: &CoalgebraData) -> Result<Tensor3> {
    let n = alg.dim();
    dim_check("coproduct dimension", n, delta.dim)?;
    let rows = alg.mult.sparse_rows();
    let mut conv = Tensor3::zeros(n * n);
    for (i, legs) in delta.sparse().iter().enumerate() {
        for (j, k, c) in legs {
            for a in 0..n {
                for p in 0..n {
                    for (r, m) in rows.row(a, p) {
                        conv.add_at(a * n + j, p * n + k, r * n + i, &(c * m));
                    }
                }
            }
        }
    }
    Ok(conv)
}

/// Convolution without the bialgebra check.
pub fn convolution_structure_unchecked(b: &EpsilonBialgebra) -> Result<ConvolutionStructure> {
    let n = b.dim();
    let conv = convolution_tensor(&b.alg, &b.delta)?;
    let mut id = vec![Scalar::zero(); n * n];
    for a in 0..n {
        id[a * n + a] = Scalar::one();
    }
    let nn = n * n;
    let beta = (0..nn).map(|s| apply_bilinear(&conv, &id, &basis_vector(nn, s))).collect::<Result<Vec<_>>>()?;
    let gamma = (0..nn).map(|s| apply_bilinear(&conv, &basis_vector(nn, s), &id)).collect::<Result<Vec<_>>>()?;
    Ok(ConvolutionStructure {
        end_alg: matrix_algebra(n),
        conv,
        beta: LinearOperator::from_images(nn, beta)?,
        gamma: LinearOperator::from_images(nn, gamma)?,
    })
}

pub fn convolution_structure(b: &EpsilonBialgebra) -> Result<ConvolutionStructure> {
    b.require_valid()?;
    convolution_structure_unchecked(b)
}

/// The nine operations on End(A), from convolution and composition directly:
/// `T↘S = (id∗T∗id)S`, `T↗S = (id∗T)(S∗id)`, `T↙S = (T∗id)(id∗S)`,
/// `T↖S = T(id∗S∗id)`, `T↓S = t(T∗id)S`, `T↑S = tT(S∗id)`, and
/// `T≺S = T(id∗S)`, `T≻S = (id∗T)S`, `T∘S = tTS`.
pub fn ennea_on_end(b: &EpsilonBialgebra) -> Result<EnneaStructure> {
    b.require_valid()?;
    ennea_on_end_unchecked(b)
}

pub fn ennea_on_end_unchecked(b: &EpsilonBialgebra) -> Result<EnneaStructure> {
    let n = b.dim();
    let nn = n * n;
    let conv = convolution_tensor(&b.alg, &b.delta)?;
    let comp = matrix_algebra(n).mult;
    let mut id = vec![Scalar::zero(); nn];
    for a in 0..n {
        id[a * n + a] = Scalar::one();
    }
    let cv = |x: &[Scalar], y: &[Scalar]| apply_bilinear(&conv, x, y).expect("dims");
    let basis: Vec<Vec<Scalar>> = (0..nn).map(|s| basis_vector(nn, s)).collect();
    let id_t: Vec<_> = basis.iter().map(|e| cv(&id, e)).collect();
    let t_id: Vec<_> = basis.iter().map(|e| cv(e, &id)).collect();
    let id_t_id: Vec<_> = id_t.iter().map(|x| cv(x, &id)).collect();
    let op = |f: &dyn Fn(usize, usize) -> (Vec<Scalar>, Vec<Scalar>), scale: Option<&Scalar>| {
        Tensor3::from_fn(nn, |x, y| {
            let (l, r) = f(x, y);
            let v = apply_bilinear(&comp, &l, &r).expect("dims");
            match scale {
                Some(s) => v.iter().map(|z| z * s).collect(),
                None => v,
            }
        })
    };
    let t = &b.t;
    let e = &basis;
    Ok(EnneaStructure {
        t: t.clone(),
        se: op(&|x, y| (id_t_id[x].clone(), e[y].clone()), None),
        ne: op(&|x, y| (id_t[x].clone(), t_id[y].clone()), None),
        sw: op(&|x, y| (t_id[x].clone(), id_t[y].clone()), None),
        nw: op(&|x, y| (e[x].clone(), id_t_id[y].clone()), None),
        down: op(&|x, y| (t_id[x].clone(), e[y].clone()), Some(t)),
        up: op(&|x, y| (e[x].clone(), t_id[y].clone()), Some(t)),
        prec: op(&|x, y| (e[x].clone(), id_t[y].clone()), None),
        succ: op(&|x, y| (id_t[x].clone(), e[y].clone()), None),
        circ: comp.scale(t),
    })
}

/// `a ⋈ b = b₍₁₎ a b₍₂₎`.
pub fn prelie_from_bialgebra(b: &EpsilonBialgebra) -> Result<PreLieStructure> {
    b.require_valid()?;
    Ok(prelie_from_bialgebra_unchecked(b))
}

pub fn prelie_from_bialgebra_unchecked(b: &EpsilonBialgebra) -> PreLieStructure {
    let n = b.dim();
    let m = &b.alg.mult;
    let sparse = b.delta.sparse();
    let bowtie = Tensor3::from_fn(n, |a, x| {
        let mut v = vec![Scalar::zero(); n];
        for (p, q, c) in &sparse[x] {
            for (k, u) in m.product_of_basis(*p, a).iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (l, w) in m.product_of_basis(k, *q).iter().enumerate() {
                    if !w.is_zero() {
                        v[l] += &(&(c * u) * w);
                    }
                }
            }
        }
        v
    });
    PreLieStructure { bowtie }
}

/// `D(xy) = D(x)y + xD(y)` on basis pairs.
pub fn check_derivation(alg: &FiniteAlgebra, d: &LinearOperator, context: &str) -> Result<CheckReport> {
    dim_check("operator size", alg.dim(), d.dim())?;
    let n = alg.dim();
    let m = &alg.mult;
    let dm = m.postcompose(&d.matrix)?;
    let rhs = m.precompose_left(&d.matrix)?.add(&m.precompose_right(&d.matrix)?)?;
    let mut r = CheckReport::new();
    let mut witnessed = false;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (dm.product_of_basis(i, j), rhs.product_of_basis(i, j));
            if x == y {
                r.record_pass();
            } else if witnessed {
                r.record_repeat_fail();
            } else {
                witnessed = true;
                r.compare(|| context.to_string(), &[i, j], x, y);
            }
        }
    }
    Ok(r)
}

/// `Δ(B(b)) = b₍₁₎ ⊗ B(b₍₂₎) + B(b₍₁₎) ⊗ b₍₂₎` on basis elements.
pub fn check_coderivation(delta: &CoalgebraData, d: &LinearOperator) -> Result<CheckReport> {
    dim_check("operator size", delta.dim, d.dim())?;
    let n = delta.dim;
    let sparse = delta.sparse();
    let mut r = CheckReport::new();
    for (x, legs) in sparse.iter().enumerate() {
        let lhs = delta.apply(&d.image(x))?;
        let mut rhs = vec![Scalar::zero(); n * n];
        for (p, q, c) in legs {
            for (k, v) in d.image(*q).iter().enumerate() {
                if !v.is_zero() {
                    rhs[p * n + k] += &(c * v);
                }
            }
            for (k, v) in d.image(*p).iter().enumerate() {
                if !v.is_zero() {
                    rhs[k * n + q] += &(c * v);
                }
            }
        }
        r.compare(|| "coderivation".into(), &[x], &lhs, &rhs);
    }
    Ok(r)
}

/// `L_a x = a ⋈ x + t a x` as a matrix.
pub fn l_operator(b: &EpsilonBialgebra, bowtie: &Tensor3, a: usize) -> LinearOperator {
    let n = b.dim();
    let images = (0..n)
        .map(|x| {
            let ax: Vec<Scalar> = b.alg.mult.product_of_basis(a, x).iter().map(|v| v * &b.t).collect();
            vec_add(bowtie.product_of_basis(a, x), &ax)
        })
        .collect();
    LinearOperator::from_images(n, images).expect("square")
}

/// Every `L_a` is a derivation of `(A, μ)`. For a candidate `B`, notes whether
/// it is a derivation and a coderivation; when both, checks
/// `B(a ⋈ b) = B(a) ⋈ b + a ⋈ B(b)`.
pub fn check_derivations(b: &EpsilonBialgebra, candidate: Option<&LinearOperator>) -> Result<CheckReport> {
    let p = prelie_from_bialgebra_unchecked(b);
    let mut r = CheckReport::new();
    for a in 0..b.dim() {
        let la = l_operator(b, &p.bowtie, a);
        r.merge(check_derivation(&b.alg, &la, &format!("L_{a} is a derivation"))?);
    }
    let Some(d) = candidate else { return Ok(r) };
    let der = check_derivation(&b.alg, d, "candidate derivation")?;
    let coder = check_coderivation(&b.delta, d)?;
    r.note(format!("candidate is a derivation: {}", der.passed()));
    r.note(format!("candidate is a coderivation: {}", coder.passed()));
    if der.passed() && coder.passed() {
        let lhs = p.bowtie.postcompose(&d.matrix)?;
        let rhs = p.bowtie.precompose_left(&d.matrix)?.add(&p.bowtie.precompose_right(&d.matrix)?)?;
        r.merge(crate::algebra::compare_ops("bi-derivation is a pre-Lie derivation", &lhs, &rhs));
    }
    Ok(r)
}

/// A word in the free algebra; the empty word is the unit.
pub type Word = Vec<usize>;

/// `c·l⊗r`, each leg the unit (`None`) or a generator.
pub type GeneratorTerm = (Scalar, Option<usize>, Option<usize>);

/// Images of the generators under a base coproduct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCoproduct {
    pub generators: usize,
    pub images: Vec<Vec<GeneratorTerm>>,
}

impl GeneratorCoproduct {
    /// Legs inside the generator span.
    pub fn from_coalgebra(c: &CoalgebraData) -> Self {
        let images = c.sparse().into_iter().map(|v| v.into_iter().map(|(j, k, s)| (s, Some(j), Some(k))).collect()).collect();
        GeneratorCoproduct { generators: c.dim, images }
    }

    /// `Δ(X) = X ⊗ 1 + 1 ⊗ X` for every generator.
    pub fn primitive(generators: usize) -> Self {
        let images = (0..generators).map(|g| vec![(Scalar::one(), Some(g), None), (Scalar::one(), None, Some(g))]).collect();
        GeneratorCoproduct { generators, images }
    }
}

type Tensor2W = BTreeMap<(Word, Word), Scalar>;
type Tensor3W = BTreeMap<(Word, Word, Word), Scalar>;

fn add_to<K: Ord>(m: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    let e = m.entry(k).or_insert_with(Scalar::zero);
    *e += &c;
}

fn leg(x: Option<usize>) -> Word {
    x.into_iter().collect()
}

fn concat(a: &[usize], b: &[usize]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

/// `Δ^t` on a word: the unit goes to `−t 1 ⊗ 1`; otherwise
/// `Σ_k w_<k Δ(X_k) w_>k + t Σ` over proper splits.
pub fn extended_coproduct(base: &GeneratorCoproduct, t: &Scalar, w: &[usize]) -> Tensor2W {
    let mut out = Tensor2W::new();
    if w.is_empty() {
        add_to(&mut out, (vec![], vec![]), -t);
        return out;
    }
    for (k, &x) in w.iter().enumerate() {
        for (c, l, r) in &base.images[x] {
            add_to(&mut out, (concat(&w[..k], &leg(*l)), concat(&leg(*r), &w[k + 1..])), c.clone());
        }
    }
    for k in 1..w.len() {
        add_to(&mut out, (w[..k].to_vec(), w[k..].to_vec()), t.clone());
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn words_up_to(g: usize, cap: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Word> = vec![vec![]];
    for _ in 0..cap {
        let next: Vec<Word> = layer.iter().flat_map(|w| (0..g).map(move |x| concat(w, &[x]))).collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn word_label(w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|x| format!("X{}", x + 1)).collect()
    }
}

/// Records a comparison of sparse word tensors; one witness per identity.
fn compare_maps<K: Ord + Clone + std::fmt::Debug>(
    r: &mut CheckReport,
    witnessed: &mut bool,
    context: impl FnOnce() -> String,
    a: &BTreeMap<K, Scalar>,
    b: &BTreeMap<K, Scalar>,
) {
    let clean = |m: &BTreeMap<K, Scalar>| m.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k.clone(), v.clone())).collect::<BTreeMap<_, _>>();
    let (a, b) = (clean(a), clean(b));
    if a == b {
        r.record_pass();
        return;
    }
    if *witnessed {
        r.record_repeat_fail();
        return;
    }
    *witnessed = true;
    let keys: std::collections::BTreeSet<K> = a.keys().chain(b.keys()).cloned().collect();
    let get = |m: &BTreeMap<K, Scalar>, k: &K| m.get(k).cloned().unwrap_or_else(Scalar::zero);
    let lhs = keys.iter().map(|k| get(&a, k)).collect();
    let rhs = keys.iter().map(|k| get(&b, k)).collect();
    let basis: Vec<String> = keys.iter().map(|k| format!("{k:?}")).collect();
    r.record_fail(Witness { context: format!("{} on basis {}", context(), basis.join(" ")), tuple: vec![], lhs, rhs });
}

fn left_apply(base: &GeneratorCoproduct, t: &Scalar, x: &Tensor2W) -> Tensor3W {
    let mut out = Tensor3W::new();
    for ((u, v), c) in x {
        for ((p, q), d) in extended_coproduct(base, t, u) {
            add_to(&mut out, (p, q, v.clone()), c * &d);
        }
    }
    out
}

fn right_apply(base: &GeneratorCoproduct, t: &Scalar, x: &Tensor2W) -> Tensor3W {
    let mut out = Tensor3W::new();
    for ((u, v), c) in x {
        for ((p, q), d) in extended_coproduct(base, t, v) {
            add_to(&mut out, (u.clone(), p, q), c * &d);
        }
    }
    out
}

/// On words of length at most `cap`: the ε(t_i) compatibility for products
/// within the cap, coassociativity of each `Δ^{t_i}`, and
/// `(id ⊗ Δ^{t_i})Δ^{t_j} = (Δ^{t_j} ⊗ id)Δ^{t_i}` for all `i, j`.
pub fn free_extension_coproducts(base: &GeneratorCoproduct, t1: &Scalar, t2: &Scalar, cap: usize) -> Result<CheckReport> {
    if cap < 2 {
        return Err(Error::Invalid(format!("degree cap {cap} < 2")));
    }
    if base.images.len() != base.generators {
        return Err(Error::Dimension(format!("{} images for {} generators", base.images.len(), base.generators)));
    }
    for img in &base.images {
        for (_, l, r) in img {
            if l.iter().chain(r.iter()).any(|&x| x >= base.generators) {
                return Err(Error::Dimension("coproduct leg out of range".into()));
            }
        }
    }
    let words = words_up_to(base.generators, cap);
    let mut r = CheckReport::new();
    let ts = [(1, t1), (2, t2)];
    for (i, t) in ts {
        let mut witnessed = false;
        for u in &words {
            for v in words.iter().filter(|v| u.len() + v.len() <= cap) {
                let lhs = extended_coproduct(base, t, &concat(u, v));
                let mut rhs = Tensor2W::new();
                for ((p, q), c) in extended_coproduct(base, t, u) {
                    add_to(&mut rhs, (p, concat(&q, v)), c);
                }
                for ((p, q), c) in extended_coproduct(base, t, v) {
                    add_to(&mut rhs, (concat(u, &p), q), c);
                }
                add_to(&mut rhs, (u.clone(), v.clone()), t.clone());
                compare_maps(&mut r, &mut witnessed, || format!("ε({t}) compatibility for Δ^t{i} at ({}, {})", word_label(u), word_label(v)), &lhs, &rhs);
            }
        }
    }
    for (i, ti) in ts {
        for (j, tj) in ts {
            let mut witnessed = false;
            for w in &words {
                let lhs = right_apply(base, ti, &extended_coproduct(base, tj, w));
                let rhs = left_apply(base, tj, &extended_coproduct(base, ti, w));
                let what = if i == j { format!("coassociativity of Δ^t{i}") } else { format!("mixed identity ({i},{j})") };
                compare_maps(&mut r, &mut witnessed, || format!("{what} at {}", word_label(w)), &lhs, &rhs);
            }
        }
    }
    r.note(format!("verified up to degree {cap}"));
    Ok(r)
}

/// Diagonal operator `e_i ↦ c_i e_i`.
pub fn diagonal_operator(c: &[Scalar]) -> LinearOperator {
    let n = c.len();
    let mut m = Matrix::zeros(n, n);
    for (i, v) in c.iter().enumerate() {
        m.set(i, i, v.clone());
    }
    LinearOperator::new(m).expect("square")
}
