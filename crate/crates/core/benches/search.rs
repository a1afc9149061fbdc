use criterion::{criterion_group, criterion_main, Criterion};

use quartic_core::enumerate::{discover_l2, enumerate_fields, DiscTarget, SearchBudget, SearchSpec};
use quartic_core::exactmath::parse_poly;
use quartic_core::numfield::make_field;
use quartic_core::Parallelism;

fn paths() -> Vec<(&'static str, Parallelism)> {
    let mut v = vec![("sequential", Parallelism::Sequential)];
    if cfg!(feature = "parallel") {
        v.push(("rayon", Parallelism::Rayon { jobs: 0 }));
    }
    v
}

fn quartic_box(c: &mut Criterion) {
    let spec = SearchSpec::new(4, DiscTarget::AbsBound(5_000));
    let mut g = c.benchmark_group("quartics |d| <= 5000");
    g.sample_size(10);
    for (name, par) in paths() {
        g.bench_function(name, |b| b.iter(|| enumerate_fields(&spec, par).unwrap()));
    }
    g.finish();
}

fn l2_search(c: &mut Criterion) {
    let k = make_field(&parse_poly("x^3-4x-1").unwrap()).unwrap();
    let mut g = c.benchmark_group("L2* for Disc 229");
    g.sample_size(10);
    for (name, par) in paths() {
        g.bench_function(name, |b| b.iter(|| discover_l2(&k, true, SearchBudget::default(), par).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, quartic_box, l2_search);
criterion_main!(benches);
