//! Benchmarks for the three hot paths, all on the quadric cone
//! `F_3[x,y,z]/(xy - z^2)`: reduced bases of bracket powers, the length
//! series, and splitting numbers.
//!
//! The cone is small enough to iterate quickly but nontrivial enough that
//! every path exercises real S-pair reduction and staircase counting.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kunzite_core::fsplit::{splitting_number, ParameterChainSpec};
use kunzite_core::hk::hk_series;
use kunzite_core::{IdealHandle, MonomialOrder, PolyRing, Polynomial, RingPresentation};

fn cone() -> RingPresentation {
    let ring = PolyRing::new(3, &["x", "y", "z"]).unwrap();
    let rel = ring.parse("x*y - z^2").unwrap();
    RingPresentation::new(&ring, vec![rel]).unwrap()
}

fn maximal_ideal(pres: &RingPresentation) -> IdealHandle {
    let gens: Vec<Polynomial> = (0..3)
        .map(|i| Polynomial::variable(pres.ring(), i))
        .collect();
    IdealHandle::new(pres, gens).unwrap()
}

fn bench_bracket_basis(c: &mut Criterion) {
    let pres = cone();
    let m = maximal_ideal(&pres);
    let mut group = c.benchmark_group("bracket_basis");
    for q in [3u64, 9, 27] {
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, &q| {
            b.iter(|| {
                let full = m.bracket_power(q).unwrap().including_relations().unwrap();
                full.groebner_basis(MonomialOrder::Grevlex).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_hk_series(c: &mut Criterion) {
    let pres = cone();
    let m = maximal_ideal(&pres);
    c.bench_function("hk_series_emax3", |b| {
        b.iter(|| hk_series(&m, 3, None).unwrap())
    });
}

fn bench_splitting_number(c: &mut Criterion) {
    let pres = cone();
    let chain = ParameterChainSpec::with_default_cap(vec![
        pres.ring().parse("x").unwrap(),
        pres.ring().parse("y").unwrap(),
    ])
    .unwrap();
    let mut group = c.benchmark_group("splitting_number");
    for q in [3u64, 9, 27] {
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, &q| {
            b.iter(|| splitting_number(&pres, &chain, q).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_bracket_basis,
    bench_hk_series,
    bench_splitting_number
);
criterion_main!(benches);
