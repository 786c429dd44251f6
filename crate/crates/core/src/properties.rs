//! Property tests across modules. Instances come from the constructions, then
//! get perturbed; the checks are compared against independent computations.

use std::collections::BTreeMap;

use proptest::prelude::*;

use crate::algebra::{is_associative, matrix_algebra, opposite_op, FiniteAlgebra, LinearOperator};
use crate::baxter::{check_morphism, is_t_baxter, scale_baxter, trialgebra_from_baxter, triangular_baxters, CoalgebraData};
use crate::bialgebra::{check_eps_bialgebra, convolution_structure, ennea_on_end, prelie_from_bialgebra, EpsilonBialgebra};
use crate::deformation::{
    baxter_deformation, check_pair_identity, check_system_on_instance, deformed_structure_check, right_unit_coproduct, BaxterDeformationData,
    DeformationSource,
};
use crate::exactlin::{apply_bilinear, basis_vector, vec_add, vec_scale, vec_sub, Matrix, Scalar, TPoly, Tensor3};
use crate::graphalg::{path_algebra, weighted_coproduct, WeightedDigraph};
use crate::operad::{certify_generic, degree3_dimension};
use crate::splitting::{
    check_ennea, check_prelie, check_trialgebra, ennea_from_commuting_pair, horizontal_vertical, opposite_ennea, prelie_pair_from_ennea,
    table, tensor_ennea, transpose_ennea, EnneaStructure, PreLieStructure, TrialgebraStructure,
};
use crate::unit_action::{check_coherence, check_compatibility, AugmentedStructure, UnitRule, UnitRules, UnitValue};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| Scalar::new(n, d))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(scalar(), n)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(vector(cols), rows).prop_map(|r| Matrix::from_rows(r).unwrap())
}

fn tensor(n: usize) -> impl Strategy<Value = Tensor3> {
    proptest::collection::vec((0..n, 0..n, 0..n, scalar()), 0..6).prop_map(move |e| Tensor3::from_entries(n, e).unwrap())
}

fn diagonal_algebra(n: usize) -> FiniteAlgebra {
    let mult = Tensor3::from_entries(n, (0..n).map(|i| (i, i, i, Scalar::one()))).unwrap();
    FiniteAlgebra::new(mult, Some(vec![Scalar::one(); n]), None).unwrap()
}

/// Valid enneas from commuting t-Baxter pairs on small algebras.
fn pair_ennea() -> impl Strategy<Value = EnneaStructure> {
    (scalar(), 0usize..4, 0usize..3, any::<bool>()).prop_map(|(t, bi, gi, full)| {
        let (row, _) = triangular_baxters(2, &-&t).unwrap();
        let (alg, n) = if full { (matrix_algebra(2), 4) } else { (row.carrier.clone(), 3) };
        let neg_t = LinearOperator::identity(n).scale(&-&t);
        let row_op = if full { LinearOperator::zero(n) } else { row.map.clone() };
        let beta = match bi {
            0 => LinearOperator::zero(n),
            1 => row_op,
            _ => neg_t.clone(),
        };
        let gamma = match gi {
            0 => LinearOperator::zero(n),
            1 => neg_t,
            _ => beta.clone(),
        };
        ennea_from_commuting_pair(&alg, &beta, &gamma, &t).unwrap()
    })
}

fn perturb(e: &EnneaStructure, which: usize, at: (usize, usize, usize), by: &Scalar) -> EnneaStructure {
    let mut ops = e.ops();
    let name = table::ENNEA_GENERATORS[which % 9];
    let n = e.dim();
    ops.get_mut(name).unwrap().add_at(at.0 % n, at.1 % n, at.2 % n, by);
    EnneaStructure::from_ops(n, e.t.clone(), &ops).unwrap()
}

/// `(x⋈y)⋈z − x⋈(y⋈z)` computed on vectors.
fn pre_lie_holds(p: &PreLieStructure, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> bool {
    let m = |a: &[Scalar], b: &[Scalar]| apply_bilinear(&p.bowtie, a, b).unwrap();
    let assoc = |a: &[Scalar], b: &[Scalar], c: &[Scalar]| vec_sub(&m(&m(a, b), c), &m(a, &m(b, c)));
    let br = |a: &[Scalar], b: &[Scalar]| vec_sub(&m(a, b), &m(b, a));
    let jacobi = vec_add(&vec_add(&br(x, &br(y, z)), &br(y, &br(z, x))), &br(z, &br(x, y)));
    assoc(x, y, z) == assoc(y, x, z) && br(x, y) == vec_scale(&br(y, x), &-Scalar::one()) && jacobi.iter().all(Scalar::is_zero)
}

fn weighted_line(n: usize, w: &[Scalar]) -> WeightedDigraph {
    WeightedDigraph::line(n).with_weights(w).unwrap()
}

fn count_paths(vertices: usize, arcs: &[(usize, usize)]) -> usize {
    fn from(v: usize, arcs: &[(usize, usize)]) -> usize {
        1 + arcs.iter().filter(|a| a.0 == v).map(|a| from(a.1, arcs)).sum::<usize>()
    }
    (0..vertices).map(|v| from(v, arcs)).sum()
}

fn acyclic_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        (Just(n), proptest::collection::vec(any::<bool>(), m)).prop_map(move |(n, keep)| {
            let arcs = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p).collect();
            (n, arcs)
        })
    })
}

fn unit_value(i: usize) -> UnitValue {
    [UnitValue::Identity, UnitValue::Zero, UnitValue::Undefined][i % 3]
}

fn mirror(name: &str) -> &str {
    match name {
        "nw" => "se",
        "se" => "nw",
        "ne" => "sw",
        "sw" => "ne",
        "up" => "down",
        "down" => "up",
        "prec" => "succ",
        "succ" => "prec",
        other => other,
    }
}

fn random_rules() -> impl Strategy<Value = UnitRules> {
    proptest::collection::vec((0usize..9, 0usize..3, 0usize..3), 0..3).prop_map(|changes| {
        let mut r = UnitRules::ennea();
        for (g, a, b) in changes {
            r.set(table::ENNEA_GENERATORS[g], UnitRule { right: unit_value(a), left: unit_value(b) });
        }
        r
    })
}

fn end_ennea_on_idempotents(c: &Scalar) -> EnneaStructure {
    let (alg, _) = path_algebra(&WeightedDigraph::unweighted(2, &[]).unwrap(), None).unwrap();
    let d = right_unit_coproduct(&alg, c).unwrap();
    ennea_on_end(&EpsilonBialgebra::new(alg, d, -c.clone()).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_transpose_and_row_operation_invariant(m in matrix(4, 5), c in nonzero(), i in 0usize..4, j in 0usize..4) {
        let r = m.rank();
        prop_assert_eq!(r, m.transpose().rank());
        let mut rows: Vec<Vec<Scalar>> = (0..4).map(|k| m.row(k).to_vec()).collect();
        rows[i] = vec_scale(&rows[i], &c);
        rows.swap(i, j);
        prop_assert_eq!(Matrix::from_rows(rows).unwrap().rank(), r);
    }

    #[test]
    fn bilinear_application_is_bilinear(op in tensor(3), x in vector(3), y in vector(3), z in vector(3), c in scalar()) {
        let lhs = apply_bilinear(&op, &vec_add(&vec_scale(&x, &c), &z), &y).unwrap();
        let rhs = vec_add(&vec_scale(&apply_bilinear(&op, &x, &y).unwrap(), &c), &apply_bilinear(&op, &z, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
        let lhs = apply_bilinear(&op, &y, &vec_add(&x, &vec_scale(&z, &c))).unwrap();
        let rhs = vec_add(&apply_bilinear(&op, &y, &x).unwrap(), &vec_scale(&apply_bilinear(&op, &y, &z).unwrap(), &c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn opposite_preserves_associativity(op in tensor(2)) {
        prop_assert_eq!(is_associative(&op).passed(), is_associative(&opposite_op(&op)).passed());
        prop_assert_eq!(opposite_op(&opposite_op(&op)), op);
    }

    #[test]
    fn baxter_scaling_and_trialgebras(t in scalar(), u in scalar(), v in scalar(), n in 2usize..4, col in any::<bool>()) {
        let (row, column) = triangular_baxters(n, &t).unwrap();
        let b = if col { column } else { row };
        prop_assert!(is_t_baxter(&b.carrier, &b.map, &b.t).unwrap().passed());
        prop_assert_eq!(scale_baxter(&b, &Scalar::one()), b.clone());
        prop_assert_eq!(scale_baxter(&scale_baxter(&b, &u), &v), scale_baxter(&b, &(&u * &v)));
        let s = scale_baxter(&b, &u);
        prop_assert!(is_t_baxter(&s.carrier, &s.map, &s.t).unwrap().passed());
        prop_assert!(check_trialgebra(&trialgebra_from_baxter(&s)).passed());
        prop_assert!(check_morphism(&s).passed());
    }

    #[test]
    fn ennea_check_agrees_with_opposite(e in pair_ennea(), which in 0usize..9, at in (0usize..4, 0usize..4, 0usize..4), by in scalar()) {
        prop_assert!(check_ennea(&e).passed());
        let p = perturb(&e, which, at, &by);
        prop_assert_eq!(check_ennea(&p).passed(), check_ennea(&opposite_ennea(&p)).passed());
    }

    #[test]
    fn opposite_and_transpose_are_involutions(e in pair_ennea(), which in 0usize..9, at in (0usize..4, 0usize..4, 0usize..4), by in scalar()) {
        let p = perturb(&e, which, at, &by);
        prop_assert_eq!(opposite_ennea(&opposite_ennea(&p)), p.clone());
        if !p.t.is_zero() {
            let tr = transpose_ennea(&p).unwrap();
            prop_assert_eq!(transpose_ennea(&tr).unwrap(), p);
            prop_assert!(check_ennea(&transpose_ennea(&e).unwrap()).passed());
        }
    }

    #[test]
    fn totals_agree_and_are_associative(e in pair_ennea()) {
        let bstar = e.bstar();
        prop_assert!(is_associative(&bstar).passed());
        let (h, v) = horizontal_vertical(&e).unwrap();
        prop_assert_eq!(h.star(), bstar.clone());
        prop_assert_eq!(v.star(), bstar);
        prop_assert!(check_trialgebra(&h).passed() && check_trialgebra(&v).passed());
    }

    #[test]
    fn commutative_case_is_self_opposite(t in scalar(), n in 1usize..4) {
        let alg = diagonal_algebra(n);
        let op = LinearOperator::identity(n).scale(&-&t);
        let e = ennea_from_commuting_pair(&alg, &op, &op, &t).unwrap();
        prop_assert_eq!(opposite_ennea(&e), e.clone());
        prop_assert_eq!(e.bstar().opposite(), e.bstar());
        prop_assert!(check_ennea(&e).passed());
    }

    #[test]
    fn pre_lie_from_constructions(e in pair_ennea(), xs in proptest::collection::vec(vector(4), 3)) {
        let n = e.dim();
        let v: Vec<Vec<Scalar>> = xs.iter().map(|x| x[..n].to_vec()).collect();
        let (p1, p2) = prelie_pair_from_ennea(&e).unwrap();
        for p in [&p1, &p2] {
            prop_assert!(check_prelie(p).passed());
            prop_assert!(pre_lie_holds(p, &v[0], &v[1], &v[2]));
        }
    }

    #[test]
    fn right_unit_bialgebras(c in nonzero(), k in scalar()) {
        let (alg, _) = path_algebra(&WeightedDigraph::line(2), None).unwrap();
        let d = right_unit_coproduct(&alg, &Scalar::one()).unwrap();
        let b = EpsilonBialgebra::new(alg.clone(), d.clone(), -Scalar::one()).unwrap();
        prop_assert!(check_eps_bialgebra(&b).passed());
        // Scaling Δ by k moves the parameter to k t.
        let scaled = EpsilonBialgebra::new(alg.clone(), d.scale(&k), -k.clone()).unwrap();
        prop_assert!(check_eps_bialgebra(&scaled).passed());
        let b = EpsilonBialgebra::new(alg.clone(), right_unit_coproduct(&alg, &c).unwrap(), -c.clone()).unwrap();
        let conv = convolution_structure(&b).unwrap();
        prop_assert!(is_associative(&conv.conv).passed());
        prop_assert!(is_t_baxter(&conv.end_alg, &conv.beta, &b.t).unwrap().passed());
        prop_assert!(is_t_baxter(&conv.end_alg, &conv.gamma, &b.t).unwrap().passed());
        let e = ennea_on_end(&b).unwrap();
        prop_assert_eq!(e.clone(), ennea_from_commuting_pair(&conv.end_alg, &conv.beta, &conv.gamma, &b.t).unwrap());
        let p = prelie_from_bialgebra(&b).unwrap();
        prop_assert!(check_prelie(&p).passed());
    }

    #[test]
    fn weighted_path_bialgebras(w in proptest::collection::vec(scalar(), 2), k in scalar()) {
        let g = weighted_line(3, &w);
        let (alg, basis) = path_algebra(&g, None).unwrap();
        let d = weighted_coproduct(&g, &basis).unwrap();
        let b = EpsilonBialgebra::new(alg, d.scale(&k), Scalar::zero()).unwrap();
        prop_assert!(check_eps_bialgebra(&b).passed());
        let e = ennea_on_end(&b).unwrap();
        prop_assert!(check_ennea(&e).passed());
    }

    #[test]
    fn path_algebras((n, arcs) in acyclic_graph()) {
        let g = WeightedDigraph::unweighted(n, &arcs).unwrap();
        let (alg, basis) = path_algebra(&g, None).unwrap();
        prop_assert_eq!(alg.dim(), count_paths(n, &arcs));
        prop_assert_eq!(basis.paths.len(), alg.dim());
        prop_assert!(is_associative(&alg.mult).passed());
        prop_assert!(alg.check_unit().passed());
    }

    #[test]
    fn weighted_coproduct_is_linear_in_weights(w1 in proptest::collection::vec(scalar(), 3), w2 in proptest::collection::vec(scalar(), 3), c in scalar()) {
        let g = WeightedDigraph::line(4);
        let (_, basis) = path_algebra(&g, None).unwrap();
        let at = |w: &[Scalar]| weighted_coproduct(&g.with_weights(w).unwrap(), &basis).unwrap();
        let sum: Vec<Scalar> = w1.iter().zip(&w2).map(|(a, b)| a + &(&c * b)).collect();
        let expect: CoalgebraData = at(&w1).add(&at(&w2).scale(&c)).unwrap();
        prop_assert_eq!(at(&sum).coproduct, expect.coproduct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn degree3_invariant_under_relation_edits(which in 0usize..3, c in nonzero(), seed in any::<u64>(), t in scalar()) {
        let p = [table::didend(), table::tridend(), table::quadri()][which].clone();
        let base = degree3_dimension(&p, &t).unwrap();
        let mut q = p.clone();
        let k = (seed as usize) % q.relations.len();
        q.relations[k] = q.relations[k].clone().scaled(&TPoly::constant(c));
        let len = q.relations.len();
        q.relations.rotate_left((seed >> 8) as usize % len);
        q.relations.reverse();
        prop_assert_eq!(degree3_dimension(&q, &t).unwrap(), base);
    }

    #[test]
    fn generic_rank_of_the_nine_operation_presentation(points in proptest::collection::vec(nonzero(), 3)) {
        let c = certify_generic(&table::ennea(), &points).unwrap();
        prop_assert!(c.consistent);
        prop_assert_eq!(c.rank, 49);
    }

    #[test]
    fn deformation_system_follows_pair_identity(r in nonzero(), r1 in nonzero()) {
        let (alg, _) = path_algebra(&WeightedDigraph::line(2), None).unwrap();
        let data = BaxterDeformationData {
            delta: right_unit_coproduct(&alg, &-&r).unwrap(),
            delta1: right_unit_coproduct(&alg, &-&r1).unwrap(),
            alg,
            t: r.clone(),
            r1: r1.clone(),
        };
        let src = DeformationSource::Trialgebra;
        prop_assert!(data.hypotheses(src).unwrap().passed());
        let (end, beta, _, beta1) = data.operators().unwrap();
        let pair = check_pair_identity(&end, &beta, &beta1, &r, &r1).unwrap();
        let a = baxter_deformation(src, &data).unwrap();
        let sys = check_system_on_instance(&a, &src.system().degree(1), &Scalar::one()).unwrap();
        prop_assert!(!pair.passed() || sys.passed());
        for order in [3, 4] {
            let full = deformed_structure_check(&a, &src.target(), order, &Scalar::one()).unwrap();
            prop_assert_eq!(full.passed(), sys.passed());
        }
    }

    #[test]
    fn compatibility_is_necessary_for_coherence(rules in random_rules()) {
        let e = end_ennea_on_idempotents(&Scalar::one());
        let compat = check_compatibility(&AugmentedStructure::ennea(&e, rules.clone())).unwrap().passed();
        let coherent = check_coherence(&e, &e, &rules).unwrap().passed();
        prop_assert!(!coherent || compat);
    }

    #[test]
    fn unit_rules_mirror_under_opposite(rules in random_rules(), c in nonzero()) {
        let e = end_ennea_on_idempotents(&c);
        let mut mirrored = UnitRules(BTreeMap::new());
        for g in table::ENNEA_GENERATORS {
            let r = rules.get(g);
            mirrored.set(mirror(g), UnitRule { right: r.left, left: r.right });
        }
        let a = check_compatibility(&AugmentedStructure::ennea(&e, rules)).unwrap();
        let b = check_compatibility(&AugmentedStructure::ennea(&opposite_ennea(&e), mirrored)).unwrap();
        prop_assert_eq!(a.passed(), b.passed());
        prop_assert_eq!(a.checks_run, b.checks_run);
    }
}

#[test]
fn tensor_ennea_of_triangular_factors() {
    let a = trialgebra_from_baxter(&triangular_baxters(2, &Scalar::one()).unwrap().0);
    let (beta, _) = triangular_baxters(2, &Scalar::one()).unwrap();
    let b = TrialgebraStructure { circ: beta.carrier.mult.clone(), ..trialgebra_from_baxter(&beta) };
    let e = tensor_ennea(&a, &b, &-Scalar::one()).unwrap();
    assert!(check_ennea(&e).passed());
    let (p1, p2) = prelie_pair_from_ennea(&e).unwrap();
    let x = basis_vector(9, 1);
    let y = vec_add(&basis_vector(9, 4), &basis_vector(9, 8));
    let z = basis_vector(9, 2);
    assert!(pre_lie_holds(&p1, &x, &y, &z) && pre_lie_holds(&p2, &z, &y, &x));
}
