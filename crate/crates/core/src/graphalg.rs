//! Weighted directed graphs, path algebras and their coproducts.

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::baxter::{check_mixed_coassociativity, CoalgebraData};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, Tensor3};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub src: usize,
    pub dst: usize,
    #[serde(rename = "w", default = "Scalar::one")]
    pub weight: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedDigraph {
    #[serde(rename = "vertices")]
    pub vertex_count: usize,
    pub arcs: Vec<Arc>,
}

impl WeightedDigraph {
    pub fn new(vertex_count: usize, arcs: Vec<Arc>) -> Result<Self> {
        let g = WeightedDigraph { vertex_count, arcs };
        g.validate()?;
        Ok(g)
    }

    /// Arcs `(src, dst)` with weight 1.
    pub fn unweighted(vertex_count: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        Self::new(vertex_count, arcs.iter().map(|&(src, dst)| Arc { src, dst, weight: Scalar::one() }).collect())
    }

    /// `0 -> 1 -> ... -> n-1`.
    pub fn line(n: usize) -> Self {
        let arcs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::unweighted(n, &arcs).expect("in range")
    }

    pub fn validate(&self) -> Result<()> {
        for (k, a) in self.arcs.iter().enumerate() {
            if a.src >= self.vertex_count || a.dst >= self.vertex_count {
                return Err(Error::Invalid(format!("arc {k} ({} -> {}) out of range for {} vertices", a.src, a.dst, self.vertex_count)));
            }
        }
        Ok(())
    }

    pub fn with_weights(&self, w: &[Scalar]) -> Result<Self> {
        if w.len() != self.arcs.len() {
            return Err(Error::Dimension(format!("{} weights for {} arcs", w.len(), self.arcs.len())));
        }
        let arcs = self.arcs.iter().zip(w).map(|(a, w)| Arc { weight: w.clone(), ..a.clone() }).collect();
        Ok(WeightedDigraph { vertex_count: self.vertex_count, arcs })
    }

    /// Kahn's algorithm; self-loops count as cycles.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.vertex_count];
        for a in &self.arcs {
            indeg[a.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..self.vertex_count).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arcs.iter().filter(|a| a.src == v) {
                indeg[a.dst] -= 1;
                if indeg[a.dst] == 0 {
                    stack.push(a.dst);
                }
            }
        }
        seen == self.vertex_count
    }
}

/// A path: its source vertex and composable arc indices. Length 0 is a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub arcs: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn target(&self, g: &WeightedDigraph) -> usize {
        self.arcs.last().map_or(self.source, |&a| g.arcs[a].dst)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathBasis {
    pub paths: Vec<Path>,
    pub max_len: usize,
    /// False when longer paths were cut off (cyclic graphs).
    pub complete: bool,
}

impl PathBasis {
    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.paths.iter().position(|q| q == p)
    }

    fn vertex(&self, v: usize) -> usize {
        v
    }

    /// Index of the subpath `arcs[lo..hi]`, or the vertex `at` when empty.
    fn sub(&self, g: &WeightedDigraph, p: &Path, lo: usize, hi: usize) -> usize {
        if lo == hi {
            let at = if lo == 0 { p.source } else { g.arcs[p.arcs[lo - 1]].dst };
            return self.vertex(at);
        }
        let q = Path { source: g.arcs[p.arcs[lo]].src, arcs: p.arcs[lo..hi].to_vec() };
        self.index_of(&q).expect("subpaths of basis paths are in the basis")
    }

    pub fn label(&self, g: &WeightedDigraph, i: usize) -> String {
        let p = &self.paths[i];
        if p.is_empty() {
            format!("e{}", p.source + 1)
        } else {
            p.arcs.iter().map(|&a| format!("a({},{})", g.arcs[a].src + 1, g.arcs[a].dst + 1)).collect::<Vec<_>>().join("")
        }
    }
}

/// Vertices first, then paths by length with arcs in index order.
pub fn enumerate_paths(g: &WeightedDigraph, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..g.vertex_count).map(|v| Path { source: v, arcs: vec![] }).collect();
    let mut frontier: Vec<Path> = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let end = p.target(g);
            for (k, a) in g.arcs.iter().enumerate() {
                if a.src == end {
                    let mut arcs = p.arcs.clone();
                    arcs.push(k);
                    next.push(Path { source: p.source, arcs });
                }
            }
        }
        next.sort_by(|a, b| a.arcs.cmp(&b.arcs));
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The path algebra with `e_i e_i = e_i` and concatenation. For cyclic graphs
/// `max_len` is required and paths longer than it are set to zero.
pub fn path_algebra(g: &WeightedDigraph, max_len: Option<usize>) -> Result<(FiniteAlgebra, PathBasis)> {
    g.validate()?;
    let acyclic = g.is_acyclic();
    let longest = g.vertex_count.saturating_sub(1);
    let (max_len, complete) = match (acyclic, max_len) {
        (true, None) => (longest, true),
        (true, Some(l)) => (l, l >= longest),
        (false, Some(l)) => (l, false),
        (false, None) => return Err(Error::Invalid("cyclic graph needs a maximum path length".into())),
    };
    let paths = enumerate_paths(g, max_len);
    let basis = PathBasis { paths, max_len, complete };
    let n = basis.paths.len();
    let mut mult = Tensor3::zeros(n);
    for (i, p) in basis.paths.iter().enumerate() {
        for (j, q) in basis.paths.iter().enumerate() {
            if p.target(g) != q.source {
                continue;
            }
            let k = match (p.is_empty(), q.is_empty()) {
                (true, _) => Some(j),
                (false, true) => Some(i),
                (false, false) => {
                    let mut arcs = p.arcs.clone();
                    arcs.extend(&q.arcs);
                    basis.index_of(&Path { source: p.source, arcs })
                }
            };
            if let Some(k) = k {
                mult.set(i, j, k, Scalar::one());
            }
        }
    }
    let mut unit = vec![Scalar::zero(); n];
    for u in unit.iter_mut().take(g.vertex_count) {
        *u = Scalar::one();
    }
    let labels = (0..n).map(|i| basis.label(g, i)).collect();
    let alg = FiniteAlgebra::new(mult, Some(unit), Some(labels))?;
    Ok((alg, basis))
}

fn require_complete(basis: &PathBasis) -> Result<()> {
    if basis.complete {
        Ok(())
    } else {
        Err(Error::Invalid("coproducts do not descend to the truncated path algebra of a cyclic graph".into()))
    }
}

/// `Δ(e_i) = 0`, `Δ(a) = w(a) s(a) ⊗ t(a)`, extended as a derivation along paths.
pub fn weighted_coproduct(g: &WeightedDigraph, basis: &PathBasis) -> Result<CoalgebraData> {
    require_complete(basis)?;
    let mut entries = Vec::new();
    for (x, p) in basis.paths.iter().enumerate() {
        for (k, &a) in p.arcs.iter().enumerate() {
            let left = basis.sub(g, p, 0, k);
            let right = basis.sub(g, p, k + 1, p.len());
            entries.push((x, left, right, g.arcs[a].weight.clone()));
        }
    }
    CoalgebraData::from_entries(basis.paths.len(), entries)
}

/// `Δ̂(e_i) = e_i ⊗ e_i` and `Δ̂(α) = Σ` over all splits of `α`, the end ones
/// using `s(α)` and `t(α)`.
pub fn hat_coproduct(g: &WeightedDigraph, basis: &PathBasis) -> Result<CoalgebraData> {
    require_complete(basis)?;
    let mut entries = Vec::new();
    for (x, p) in basis.paths.iter().enumerate() {
        for k in 0..=p.len() {
            entries.push((x, basis.sub(g, p, 0, k), basis.sub(g, p, k, p.len()), Scalar::one()));
        }
    }
    CoalgebraData::from_entries(basis.paths.len(), entries)
}

/// `(Δ_i ⊗ id)Δ_j = (id ⊗ Δ_j)Δ_i` for all `i, j` in `{1, 2}`.
pub fn check_hypercubic(d1: &CoalgebraData, d2: &CoalgebraData) -> Result<CheckReport> {
    if d1.dim != d2.dim {
        return Err(Error::Dimension(format!("coproducts of dimension {} and {}", d1.dim, d2.dim)));
    }
    let mut r = CheckReport::new();
    for (i, a) in [(1, d1), (2, d2)] {
        for (j, b) in [(1, d1), (2, d2)] {
            r.merge(check_mixed_coassociativity(a, b, &format!("hypercubic ({i},{j})")));
        }
    }
    Ok(r)
}

/// Weighted coproducts for two weightings checked pairwise, and each against `Δ̂`.
pub fn two_weight_coproducts(g: &WeightedDigraph, w1: &[Scalar], w2: &[Scalar]) -> Result<CheckReport> {
    let (_, basis) = path_algebra(g, None)?;
    let d1 = weighted_coproduct(&g.with_weights(w1)?, &basis)?;
    let d2 = weighted_coproduct(&g.with_weights(w2)?, &basis)?;
    let hat = hat_coproduct(g, &basis)?;
    let mut r = check_hypercubic(&d1, &d2)?;
    for (name, d) in [("Δ₁", &d1), ("Δ₂", &d2)] {
        r.merge(check_mixed_coassociativity(d, &hat, &format!("({name} ⊗ id)Δ̂ = (id ⊗ Δ̂){name}")));
        r.merge(check_mixed_coassociativity(&hat, d, &format!("(Δ̂ ⊗ id){name} = (id ⊗ {name})Δ̂")));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_associative;
    use crate::exactlin::q;

    fn delta_of(d: &CoalgebraData, x: usize) -> Vec<(usize, usize, Scalar)> {
        d.sparse()[x].clone()
    }

    #[test]
    fn small_path_algebras() {
        let (a, _) = path_algebra(&WeightedDigraph::line(1), None).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.mult.get(0, 0, 0), &q("1"));
        let (a, b) = path_algebra(&WeightedDigraph::line(2), None).unwrap();
        assert_eq!(a.dim(), 3);
        // e1 a = a, a e2 = a, a a = 0, a e1 = 0
        assert_eq!(a.mult.product_of_basis(0, 2), &[q("0"), q("0"), q("1")]);
        assert_eq!(a.mult.product_of_basis(2, 1), &[q("0"), q("0"), q("1")]);
        assert!(a.mult.product_of_basis(2, 2).iter().all(Scalar::is_zero));
        assert!(a.mult.product_of_basis(2, 0).iter().all(Scalar::is_zero));
        assert_eq!(b.label(&WeightedDigraph::line(2), 2), "a(1,2)");
        let (a, _) = path_algebra(&WeightedDigraph::line(3), None).unwrap();
        assert_eq!(a.dim(), 6);
        assert!(is_associative(&a.mult).passed());
        assert!(a.check_unit().passed());
    }

    #[test]
    fn cyclic_needs_cap() {
        let loop1 = WeightedDigraph::unweighted(1, &[(0, 0)]).unwrap();
        assert!(path_algebra(&loop1, None).is_err());
        let (a, b) = path_algebra(&loop1, Some(3)).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(is_associative(&a.mult).passed());
        assert!(hat_coproduct(&loop1, &b).is_err());
        assert!(weighted_coproduct(&loop1, &b).is_err());
    }

    #[test]
    fn weighted_examples() {
        let g = WeightedDigraph::line(2).with_weights(&[q("1/2")]).unwrap();
        let (_, b) = path_algebra(&g, None).unwrap();
        let d = weighted_coproduct(&g, &b).unwrap();
        assert!(delta_of(&d, 0).is_empty());
        assert_eq!(delta_of(&d, 2), vec![(0, 1, q("1/2"))]);

        // Δ(a1 a2) = w1 e1 ⊗ a2 + w2 a1 ⊗ e3 on the 3-vertex line.
        let g = WeightedDigraph::line(3).with_weights(&[q("2"), q("5")]).unwrap();
        let (_, b) = path_algebra(&g, None).unwrap();
        let d = weighted_coproduct(&g, &b).unwrap();
        let idx = |s: &str| (0..6).find(|&i| b.label(&g, i) == s).unwrap();
        let a1a2 = idx("a(1,2)a(2,3)");
        let mut got = delta_of(&d, a1a2);
        got.sort();
        let mut want = vec![(idx("e1"), idx("a(2,3)"), q("2")), (idx("a(1,2)"), idx("e3"), q("5"))];
        want.sort();
        assert_eq!(got, want);
        assert!(d.is_coassociative().passed());
    }

    #[test]
    fn hat_examples() {
        let g = WeightedDigraph::line(3);
        let (_, b) = path_algebra(&g, None).unwrap();
        let d = hat_coproduct(&g, &b).unwrap();
        let idx = |s: &str| (0..6).find(|&i| b.label(&g, i) == s).unwrap();
        assert_eq!(delta_of(&d, idx("e2")), vec![(idx("e2"), idx("e2"), q("1"))]);
        let mut got = delta_of(&d, idx("a(1,2)"));
        got.sort();
        let mut want = vec![(idx("e1"), idx("a(1,2)"), q("1")), (idx("a(1,2)"), idx("e2"), q("1"))];
        want.sort();
        assert_eq!(got, want);
        let mut got = delta_of(&d, idx("a(1,2)a(2,3)"));
        got.sort();
        let p = idx("a(1,2)a(2,3)");
        let mut want = vec![(idx("e1"), p, q("1")), (idx("a(1,2)"), idx("a(2,3)"), q("1")), (p, idx("e3"), q("1"))];
        want.sort();
        assert_eq!(got, want);
        assert!(d.is_coassociative().passed());
    }

    #[test]
    fn hypercubic_pairs() {
        let g = WeightedDigraph::line(3);
        assert!(two_weight_coproducts(&g, &[q("1"), q("1")], &[q("1"), q("1")]).unwrap().passed());
        assert!(two_weight_coproducts(&g, &[q("1"), q("1")], &[q("1/2"), q("1/3")]).unwrap().passed());
        // A non-coassociative partner is caught.
        let (_, b) = path_algebra(&g, None).unwrap();
        let d = weighted_coproduct(&g, &b).unwrap();
        let bad = CoalgebraData::from_entries(6, [(0, 0, 0, q("1"))]).unwrap();
        let r = check_hypercubic(&d, &bad).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn weights_are_linear() {
        let g = WeightedDigraph::line(3);
        let (_, b) = path_algebra(&g, None).unwrap();
        let d = weighted_coproduct(&g, &b).unwrap();
        let d3 = weighted_coproduct(&g.with_weights(&[q("3"), q("3")]).unwrap(), &b).unwrap();
        assert_eq!(d.scale(&q("3")), d3);
    }
}
