//! Relation tables for dendriform di/trialgebras, quadri-algebras and
//! t-ennea-algebras.

use crate::exactlin::{Scalar, TPoly};
use crate::relations::{Composite, Presentation, Relation, Term};

pub const TRIDEND_GENERATORS: [&str; 3] = ["prec", "succ", "circ"];
pub const ENNEA_GENERATORS: [&str; 9] = ["nw", "ne", "sw", "se", "up", "down", "prec", "succ", "circ"];
pub const QUADRI_GENERATORS: [&str; 4] = ["nw", "ne", "sw", "se"];

fn l(inner: &str, outer: &str) -> Term {
    Term::left(inner, outer)
}

fn r(outer: &str, inner: &str) -> Term {
    Term::right(outer, inner)
}

/// The seven trialgebra axioms, `⋆ = ≺ + ≻ + ∘`.
pub fn tridend() -> Presentation {
    let one = TPoly::one();
    Presentation {
        name: "tridend".into(),
        generators: TRIDEND_GENERATORS.iter().map(|s| s.to_string()).collect(),
        composites: vec![Composite::new("star", &[(one.clone(), "prec"), (one.clone(), "succ"), (one, "circ")])],
        relations: tridend_rows(),
    }
}

fn tridend_rows() -> Vec<Relation> {
    let rows = [
        (l("prec", "prec"), r("prec", "star")),
        (l("succ", "prec"), r("succ", "prec")),
        (l("star", "succ"), r("succ", "succ")),
        (l("succ", "circ"), r("succ", "circ")),
        (l("prec", "circ"), r("circ", "succ")),
        (l("circ", "prec"), r("circ", "prec")),
        (l("circ", "circ"), r("circ", "circ")),
    ];
    rows.into_iter().enumerate().map(|(i, (a, b))| Relation::new(format!("{}", i + 1), vec![a], vec![b])).collect()
}

/// Dendriform dialgebras: the trialgebra axioms with `∘ = 0`.
pub fn didend() -> Presentation {
    let mut p = tridend().restrict(&["prec", "succ"]).expect("generators exist");
    p.name = "didend".into();
    p
}

/// The 49 relations, as blocks 1..7 of seven relations each. Relation `b.r`
/// sits in block `b`, position `r`.
pub fn ennea() -> Presentation {
    let one = TPoly::one();
    let t = TPoly::t();
    let t2 = &t * &t;
    let comp = |name: &str, parts: &[(&TPoly, &str)]| {
        Composite { name: name.into(), parts: parts.iter().map(|(c, g)| ((*c).clone(), g.to_string())).collect() }
    };
    let composites = vec![
        comp("rhd", &[(&one, "ne"), (&one, "se"), (&t, "succ")]),
        comp("lhd", &[(&one, "nw"), (&one, "sw"), (&t, "prec")]),
        comp("cbar", &[(&one, "up"), (&one, "down"), (&t, "circ")]),
        comp("vee", &[(&one, "se"), (&one, "sw"), (&one, "down")]),
        comp("wedge", &[(&one, "ne"), (&one, "nw"), (&one, "up")]),
        comp("star", &[(&one, "succ"), (&one, "prec"), (&one, "circ")]),
        comp(
            "bstar",
            &[
                (&one, "ne"),
                (&one, "se"),
                (&t, "succ"),
                (&one, "nw"),
                (&one, "sw"),
                (&t, "prec"),
                (&one, "up"),
                (&one, "down"),
                (&t, "circ"),
            ],
        ),
    ];
    let blocks: [[(Term, Term); 7]; 7] = [
        [
            (l("nw", "nw"), r("nw", "bstar")),
            (l("ne", "nw"), r("ne", "lhd")),
            (l("wedge", "ne"), r("ne", "rhd")),
            (l("ne", "up"), r("ne", "cbar")),
            (l("nw", "up"), r("up", "rhd")),
            (l("up", "nw"), r("up", "lhd")),
            (l("up", "up"), r("up", "cbar")),
        ],
        [
            (l("sw", "nw"), r("sw", "wedge")),
            (l("se", "nw"), r("se", "nw")),
            (l("vee", "ne"), r("se", "ne")),
            (l("se", "up"), r("se", "up")),
            (l("sw", "up"), r("down", "ne")),
            (l("down", "nw"), r("down", "nw")),
            (l("down", "up"), r("down", "up")),
        ],
        [
            (l("lhd", "sw"), r("sw", "vee")),
            (l("rhd", "sw"), r("se", "sw")),
            (l("bstar", "se"), r("se", "se")),
            (l("rhd", "down"), r("se", "down")),
            (l("lhd", "down"), r("down", "se")),
            (l("cbar", "sw"), r("down", "sw")),
            (l("cbar", "down"), r("down", "down")),
        ],
        [
            (l("sw", "prec"), r("sw", "star")),
            (l("se", "prec"), r("se", "prec")),
            (l("vee", "succ"), r("se", "succ")),
            (l("se", "circ"), r("se", "circ")),
            (l("sw", "circ"), r("down", "succ")),
            (l("down", "prec"), r("down", "prec")),
            (l("down", "circ"), r("down", "circ")),
        ],
        [
            (l("nw", "prec"), r("prec", "vee")),
            (l("ne", "prec"), r("succ", "sw")),
            (l("wedge", "succ"), r("succ", "se")),
            (l("ne", "circ"), r("succ", "down")),
            (l("nw", "circ"), r("circ", "se")),
            (l("up", "prec"), r("circ", "sw")),
            (l("up", "circ"), r("circ", "down")),
        ],
        [
            (l("prec", "nw"), r("prec", "wedge")),
            (l("succ", "nw"), r("succ", "nw")),
            (l("star", "ne"), r("succ", "ne")),
            (l("succ", "up"), r("succ", "up")),
            (l("prec", "up"), r("circ", "ne")),
            (l("circ", "nw"), r("circ", "nw")),
            (l("circ", "up"), r("circ", "up")),
        ],
        [
            (l("prec", "prec"), r("prec", "star")),
            (l("succ", "prec"), r("succ", "prec")),
            (l("star", "succ"), r("succ", "succ")),
            (l("succ", "circ"), r("succ", "circ")),
            (l("prec", "circ"), r("circ", "succ")),
            (l("circ", "prec"), r("circ", "prec")),
            (l("circ", "circ"), r("circ", "circ")),
        ],
    ];
    let mut relations = Vec::with_capacity(49);
    for (b, block) in blocks.into_iter().enumerate() {
        let factor = match b {
            0..=2 => &one,
            3..=5 => &t,
            _ => &t2,
        };
        for (i, (lhs, rhs)) in block.into_iter().enumerate() {
            relations.push(Relation::new(format!("{}.{}", b + 1, i + 1), vec![lhs], vec![rhs]).scaled(factor));
        }
    }
    Presentation {
        name: "ennea".into(),
        generators: ENNEA_GENERATORS.iter().map(|s| s.to_string()).collect(),
        composites,
        relations,
    }
}

/// Quadri-algebras: the `t = 0` specialization keeping only the four arrows.
pub fn quadri() -> Presentation {
    let mut p = ennea().specialize(&Scalar::zero()).restrict(&QUADRI_GENERATORS).expect("generators exist");
    p.name = "quadri".into();
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let t = tridend();
        t.validate().unwrap();
        assert_eq!((t.generator_count(), t.relations.len()), (3, 7));
        let d = didend();
        assert_eq!((d.generator_count(), d.relations.len()), (2, 3));
        let e = ennea();
        e.validate().unwrap();
        assert_eq!((e.generator_count(), e.relations.len()), (9, 49));
        let q = quadri();
        q.validate().unwrap();
        assert_eq!((q.generator_count(), q.relations.len()), (4, 9));
        let names: Vec<&str> = q.relations.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["1.1", "1.2", "1.3", "2.1", "2.2", "2.3", "3.1", "3.2", "3.3"]);
    }

    #[test]
    fn last_block_is_tridend_times_t_squared() {
        let e = ennea();
        let tri = tridend();
        for (k, rel) in e.relations[42..].iter().enumerate() {
            let base = &tri.relations[k];
            assert_eq!(rel.lhs[0].coeff, &TPoly::t() * &TPoly::t());
            assert_eq!((&rel.lhs[0].outer, &rel.lhs[0].inner), (&base.lhs[0].outer, &base.lhs[0].inner));
            assert_eq!((&rel.rhs[0].outer, &rel.rhs[0].inner), (&base.rhs[0].outer, &base.rhs[0].inner));
        }
    }

    /// Oracle for the hand-entered table: relation `b.r` is the tensor
    /// product of trialgebra axiom `r` (left factor) with axiom `b` (right
    /// factor, third operation scaled by `t`).
    #[test]
    fn ennea_table_is_tensor_of_tridend_axioms() {
        let e = ennea();
        let tri = tridend();
        let names = [["nw", "sw", "prec"], ["ne", "se", "succ"], ["up", "down", "circ"]];
        let right_factor = |op: &str| -> Vec<(TPoly, usize)> {
            tri.resolve(op).unwrap().into_iter().map(|(c, i)| if i == 2 { (&c * &TPoly::t(), i) } else { (c, i) }).collect()
        };
        for b in 0..7 {
            for r in 0..7 {
                let ra = &tri.relations[r];
                let rb = &tri.relations[b];
                let mut v = vec![TPoly::zero(); e.monomial_count()];
                for (sign, ta, tb) in [(TPoly::one(), &ra.lhs[0], &rb.lhs[0]), (TPoly::from(-1), &ra.rhs[0], &rb.rhs[0])] {
                    assert_eq!(ta.shape, tb.shape);
                    for (ca, oa) in tri.resolve(&ta.outer).unwrap() {
                        for (cb, ob) in right_factor(&tb.outer) {
                            for (da, ia) in tri.resolve(&ta.inner).unwrap() {
                                for (db, ib) in right_factor(&tb.inner) {
                                    let o = e.generator_index(names[oa][ob]).unwrap();
                                    let i = e.generator_index(names[ia][ib]).unwrap();
                                    let x = e.monomial_index(ta.shape, o, i);
                                    let c = &(&(&ca * &cb) * &(&da * &db)) * &sign;
                                    v[x] = &v[x] + &c;
                                }
                            }
                        }
                    }
                }
                let rel = &e.relations[b * 7 + r];
                assert_eq!(rel.name, format!("{}.{}", b + 1, r + 1));
                assert_eq!(e.expand(rel).unwrap(), v, "relation {}", rel.name);
            }
        }
    }

    #[test]
    fn composite_sums_agree() {
        // ▷ + ◁ + ∘̄ and ∧ + ∨ + t⋆ expand to the same combination as ⋆̄.
        let e = ennea();
        let sum = |names: &[(&str, TPoly)]| {
            let mut v = vec![TPoly::zero(); 9];
            for (n, c) in names {
                for (k, g) in e.resolve(n).unwrap() {
                    v[g] = &v[g] + &(c * &k);
                }
            }
            v
        };
        let one = TPoly::one();
        let h = sum(&[("rhd", one.clone()), ("lhd", one.clone()), ("cbar", one.clone())]);
        let v = sum(&[("wedge", one.clone()), ("vee", one.clone()), ("star", TPoly::t())]);
        let b = sum(&[("bstar", one)]);
        assert_eq!(h, b);
        assert_eq!(v, b);
    }
}
