use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use singloc::arith::PrimeField;
use singloc::criterion::RingPresentation;
use singloc::dvr::EisensteinDVR;
use singloc::groebner::{radical_equal_with, IdealHandle};
use singloc::jacobian::{minors_with, DeterminantMethod, PolyMatrix};
use singloc::oracle::scan_with;
use singloc::poly::PolyRing;
use singloc::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn oracle_scan(c: &mut Criterion) {
    let dvr = EisensteinDVR::from_integers(5, &[-5, 0, 0]).unwrap();
    let pres = RingPresentation::parse(
        dvr,
        &["x", "y", "z", "w"],
        &["x*y - pi*z", "z*w - pi^2", "x^2 + y^2 + z^2 + w^2 - pi*x*w"],
        Some(3),
    )
    .unwrap();
    let mut group = c.benchmark_group("oracle_scan");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| scan_with(black_box(&pres), exec).unwrap())
        });
    }
    group.finish();
}

fn minors_4x6(c: &mut Criterion) {
    let ring = PolyRing::new(PrimeField::new(101).unwrap(), ["x", "y", "z"]).unwrap();
    let entries = (0..24)
        .map(|i| {
            let s = format!(
                "{}*x^{} + {}*y*z + z^{} - {}",
                i + 1,
                i % 3 + 1,
                2 * i + 3,
                i % 2 + 1,
                i
            );
            ring.parse(&s).unwrap()
        })
        .collect();
    let m = PolyMatrix::new(&ring, 4, 6, entries).unwrap();
    let mut group = c.benchmark_group("minors_4x6");
    for (name, exec) in MODES {
        for (method_name, method) in [
            ("cofactor", DeterminantMethod::Cofactor),
            ("bareiss", DeterminantMethod::Bareiss),
        ] {
            group.bench_function(BenchmarkId::new(method_name, name), |b| {
                b.iter(|| minors_with(black_box(&m), 3, exec, method))
            });
        }
    }
    group.finish();
}

fn radical_comparison(c: &mut Criterion) {
    let ring = PolyRing::new(PrimeField::new(7).unwrap(), ["x", "y", "z"]).unwrap();
    let ideal = |gens: &[&str]| {
        IdealHandle::new(&ring, gens.iter().map(|g| ring.parse(g).unwrap())).unwrap()
    };
    let a = ideal(&["x^2*y - z^3", "x*y^2 - z", "y^3 - x*z"]);
    let b = ideal(&["(x^2*y - z^3)^2", "x*y^2 - z", "(y^3 - x*z)^3"]);
    let mut group = c.benchmark_group("radical_equal");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| radical_equal_with(black_box(&a), black_box(&b), exec))
        });
    }
    group.finish();
}

criterion_group!(benches, oracle_scan, minors_4x6, radical_comparison);
criterion_main!(benches);
