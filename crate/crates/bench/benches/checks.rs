use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ennea_bench::{line_bialgebra, line_end_ennea};
use ennea_core::bialgebra::{check_eps_bialgebra, ennea_on_end};
use ennea_core::deformation::{cross_term_system, Labeling};
use ennea_core::operad::{builtin_presentation, degree3_dimension};
use ennea_core::splitting::check_ennea;
use ennea_core::unit_action::{check_coherence, check_compatibility, AugmentedStructure, UnitRules};
use ennea_core::Scalar;

fn operads(c: &mut Criterion) {
    let one = Scalar::from_int(1);
    let mut g = c.benchmark_group("degree3_dimension");
    g.sample_size(10);
    for preset in ["quadri", "ennea", "def_quadri"] {
        let p = builtin_presentation(preset).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(preset), &p, |b, p| b.iter(|| degree3_dimension(p, &one).unwrap()));
    }
    g.finish();

    let ennea = builtin_presentation("ennea").unwrap();
    c.bench_function("cross_term_system/ennea", |b| b.iter(|| cross_term_system(&ennea, &Labeling::full(&ennea)).unwrap()));
}

fn end_algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("end_algebra");
    g.sample_size(10);
    for n in [2, 3] {
        let b = line_bialgebra(n);
        g.bench_with_input(BenchmarkId::new("bialgebra_check", n), &b, |bench, b| bench.iter(|| check_eps_bialgebra(b)));
        g.bench_with_input(BenchmarkId::new("build_ennea", n), &b, |bench, b| bench.iter(|| ennea_on_end(b).unwrap()));
        let e = line_end_ennea(n);
        g.bench_with_input(BenchmarkId::new("check_ennea", n), &e, |bench, e| bench.iter(|| check_ennea(e)));
    }
    g.finish();
}

fn units(c: &mut Criterion) {
    let e = line_end_ennea(2);
    let rules = UnitRules::ennea();
    let mut g = c.benchmark_group("units");
    g.sample_size(10);
    g.bench_function("compatibility", |b| b.iter(|| check_compatibility(&AugmentedStructure::ennea(&e, rules.clone())).unwrap()));
    g.bench_function("coherence", |b| b.iter(|| check_coherence(&e, &e, &rules).unwrap()));
    g.finish();
}

criterion_group!(benches, operads, end_algebra, units);
criterion_main!(benches);
