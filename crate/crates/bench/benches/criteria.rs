use adjset_bench::{dag_instance, mag_instance};
use adjset_core::adjustment::gac_verify;
use adjset_core::reach::m_connected;
use adjset_core::{list_adjustment_sets, EnumConstraints};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const SIZES: [usize; 4] = [16, 32, 64, 128];

fn separation(c: &mut Criterion) {
    let mut group = c.benchmark_group("m_connected");
    for n in SIZES {
        let inst = dag_instance(n, 11);
        group.bench_with_input(BenchmarkId::new("dag", n), &inst, |b, i| {
            b.iter(|| m_connected(&i.g, &i.x, &i.y, &i.z).unwrap())
        });
        let inst = mag_instance(n, 11);
        group.bench_with_input(BenchmarkId::new("mag", n), &inst, |b, i| {
            b.iter(|| m_connected(&i.g, &i.x, &i.y, &i.z).unwrap())
        });
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("gac_verify");
    for n in SIZES {
        let inst = dag_instance(n, 23);
        group.bench_with_input(BenchmarkId::new("dag", n), &inst, |b, i| {
            b.iter(|| gac_verify(&i.g, &i.x, &i.y, &i.z).unwrap())
        });
        let inst = mag_instance(n, 23);
        group.bench_with_input(BenchmarkId::new("mag", n), &inst, |b, i| {
            b.iter(|| gac_verify(&i.g, &i.x, &i.y, &i.z).unwrap())
        });
    }
    group.finish();
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("list_first_100");
    let limit = EnumConstraints { limit: 100, ..Default::default() };
    for n in [12, 24, 48] {
        let inst = dag_instance(n, 5);
        group.bench_with_input(BenchmarkId::new("dag", n), &inst, |b, i| {
            b.iter(|| match list_adjustment_sets(&i.g, &i.x, &i.y, &limit) {
                Ok(it) => it.count(),
                Err(_) => 0,
            })
        });
    }
    group.finish();
}

criterion_group!(benches, separation, verify, enumerate);
criterion_main!(benches);
