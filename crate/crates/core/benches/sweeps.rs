use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fault_atlas::chart::{boards, Chart};
use fault_atlas::par::{map_with, Strategy};
use fault_atlas::{counting_feasible, fault_free_exists_oracle, BoardSpec, Topology};

fn strategies() -> Vec<(&'static str, Strategy)> {
    vec![
        ("sequential", Strategy::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Strategy::Parallel),
    ]
}

fn all_boards(max: usize, max_area: usize) -> Vec<BoardSpec> {
    Topology::ALL.iter().flat_map(|&t| boards(t, max, max)).filter(|b| b.area() <= max_area).collect()
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census 64x64");
    for (name, strategy) in strategies() {
        group.bench_function(name, |b| {
            b.iter(|| {
                for t in Topology::ALL {
                    black_box(Chart::census_with(strategy, t, 64, 64).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let list = all_boards(32, 32);
    let mut group = c.benchmark_group("oracle area<=32");
    group.sample_size(10);
    for (name, strategy) in strategies() {
        group.bench_function(name, |b| b.iter(|| black_box(map_with(strategy, &list, fault_free_exists_oracle))));
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    let list = all_boards(20, usize::MAX);
    let mut group = c.benchmark_group("counting 20x20");
    group.sample_size(10);
    for (name, strategy) in strategies() {
        group.bench_function(name, |b| b.iter(|| black_box(map_with(strategy, &list, counting_feasible))));
    }
    group.finish();
}

criterion_group!(benches, census, oracle, counting);
criterion_main!(benches);
