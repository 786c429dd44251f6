//! Degree-3 dimensions of binary quadratic non-symmetric operads.

use serde::{Deserialize, Serialize};

use crate::deformation::{cross_term_system, Labeling};
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::relations::Presentation;
use crate::splitting::table;

pub type OperadPresentation = Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree3 {
    pub monomials: usize,
    pub dim3: usize,
    pub rank: usize,
    pub relations: usize,
}

impl Degree3 {
    pub fn independent(&self) -> bool {
        self.rank == self.relations
    }
}

/// `dim P'(3) = 2g² − rank` of the expanded relation matrix at `t`.
pub fn degree3_dimension(p: &Presentation, t: &Scalar) -> Result<Degree3> {
    p.validate()?;
    let rank = p.relation_matrix(t)?.rank();
    let monomials = p.monomial_count();
    Ok(Degree3 { monomials, dim3: monomials - rank, rank, relations: p.relations.len() })
}

pub const PRESETS: [&str; 9] = ["didend", "tridend", "quadri", "ennea", "def_dd_td", "def_dd_dd", "def_td_td", "def_quadri", "def_ennea"];

/// Built-in presentations. The `def_*` ones are generated by the cross-term engine.
pub fn builtin_presentation(name: &str) -> Result<Presentation> {
    let deformed = |p: Presentation, zero_base: &[&str]| -> Result<Presentation> {
        let lab = Labeling::without_base(&p, zero_base)?;
        let mut s = cross_term_system(&p, &lab)?.presentation;
        s.name = name.to_string();
        Ok(s)
    };
    match name {
        "didend" => Ok(table::didend()),
        "tridend" => Ok(table::tridend()),
        "quadri" => Ok(table::quadri()),
        "ennea" => Ok(table::ennea()),
        "def_dd_td" => deformed(table::tridend(), &["circ"]),
        "def_dd_dd" => deformed(table::didend(), &[]),
        "def_td_td" => deformed(table::tridend(), &[]),
        "def_quadri" => deformed(table::quadri(), &[]),
        "def_ennea" => deformed(table::ennea(), &[]),
        _ => Err(Error::Unknown(format!("preset {name:?}; known: {}", PRESETS.join(", ")))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingPrefix {
    /// `[dim P'(1), dim P'(2), dim P'(3)] = [1, g, dim3]`.
    pub unsigned: Vec<usize>,
    /// `[−1, g, −dim3]`, the coefficients of `x, x², x³`.
    pub signed: Vec<i64>,
}

pub fn generating_function_prefix(p: &Presentation, t: &Scalar) -> Result<GeneratingPrefix> {
    let d = degree3_dimension(p, t)?;
    let unsigned = vec![1, p.generator_count(), d.dim3];
    let signed = unsigned.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { -(x as i64) } else { x as i64 }).collect();
    Ok(GeneratingPrefix { unsigned, signed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericCertificate {
    pub points: Vec<Scalar>,
    pub ranks: Vec<usize>,
    pub rank: usize,
    pub consistent: bool,
}

/// Ranks at the given nonzero points; the generic rank is their maximum and
/// the certificate is consistent when all points agree.
pub fn certify_generic(p: &Presentation, points: &[Scalar]) -> Result<GenericCertificate> {
    if points.len() < 3 || points.iter().any(Scalar::is_zero) {
        return Err(Error::Invalid("need at least three nonzero evaluation points".into()));
    }
    let ranks = points.iter().map(|t| degree3_dimension(p, t).map(|d| d.rank)).collect::<Result<Vec<_>>>()?;
    let rank = ranks.iter().copied().max().unwrap_or(0);
    let consistent = ranks.iter().all(|&r| r == rank);
    Ok(GenericCertificate { points: points.to_vec(), ranks, rank, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;

    #[test]
    fn sizes() {
        let expect = [("didend", 2, 3), ("tridend", 3, 7), ("quadri", 4, 9), ("ennea", 9, 49), ("def_dd_td", 5, 16), ("def_dd_dd", 4, 9), ("def_td_td", 6, 21), ("def_quadri", 8, 27), ("def_ennea", 18, 147)];
        for (name, g, r) in expect {
            let p = builtin_presentation(name).unwrap();
            assert_eq!((p.generator_count(), p.relations.len()), (g, r), "{name}");
        }
        assert!(builtin_presentation("octo").is_err());
    }

    #[test]
    fn small_dimensions() {
        for (name, d) in [("didend", 5), ("tridend", 11), ("quadri", 23), ("def_dd_dd", 23), ("def_dd_td", 34), ("def_td_td", 51), ("def_quadri", 101), ("def_ennea", 501)] {
            let p = builtin_presentation(name).unwrap();
            let r = degree3_dimension(&p, &q("1")).unwrap();
            assert_eq!(r.dim3, d, "{name}");
            assert!(r.independent());
        }
    }

    #[test]
    fn ennea_t_zero_limit() {
        let p = builtin_presentation("ennea").unwrap();
        assert_eq!(degree3_dimension(&p, &q("0")).unwrap().dim3, 141);
        assert_eq!(degree3_dimension(&p, &q("2")).unwrap().dim3, 113);
    }

    #[test]
    fn prefix_and_certificate() {
        let p = builtin_presentation("quadri").unwrap();
        let g = generating_function_prefix(&p, &q("1")).unwrap();
        assert_eq!(g.unsigned, [1, 4, 23]);
        assert_eq!(g.signed, [-1, 4, -23]);
        let c = certify_generic(&builtin_presentation("ennea").unwrap(), &[q("1"), q("-3"), q("5/7")]).unwrap();
        assert!(c.consistent && c.rank == 49);
        assert!(certify_generic(&p, &[q("1"), q("0"), q("2")]).is_err());
    }
}
