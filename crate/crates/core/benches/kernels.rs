use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use heat_tori::arith::{rat, ratio};
use heat_tori::heat::HeatKernelTable;
use heat_tori::intmat::IntMatrix;
use heat_tori::lattice::LatticeWeights;
use heat_tori::suite::{run_criterion, DEFAULT_SEED};
use heat_tori::torus::{torus_graph, torus_qn_closed_table, TorusSpec};
use heat_tori::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn heat_table(c: &mut Criterion) {
    let spec = TorusSpec::new(IntMatrix::diagonal(&[6, 8])).unwrap();
    let lw = LatticeWeights::new(vec![rat(1), ratio(2, 3)]).unwrap();
    let g = torus_graph(&spec, &lw).unwrap();
    let mut group = c.benchmark_group("heat_table_48_vertices_n10");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| HeatKernelTable::build_with(black_box(&g), 10, exec))
        });
    }
    group.finish();
}

fn closed_form(c: &mut Criterion) {
    let spec = TorusSpec::new(IntMatrix::parse("2,1,0;0,3,1;1,0,2").unwrap()).unwrap();
    let lw = LatticeWeights::new(vec![rat(1), ratio(1, 2), ratio(3, 4)]).unwrap();
    let mut group = c.benchmark_group("closed_form_table_d3_n12");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| torus_qn_closed_table(black_box(&spec), &lw, 12, exec).unwrap())
        });
    }
    group.finish();
}

fn weighted_sum_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("weighted_sum_grid");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_criterion(1, DEFAULT_SEED, exec)));
    }
    group.finish();
}

criterion_group!(benches, heat_table, closed_form, weighted_sum_grid);
criterion_main!(benches);
