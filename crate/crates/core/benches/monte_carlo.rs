//! Sequential vs rayon execution of the Monte Carlo estimators.
//!
//! Run with `cargo bench -p outcap-core`. Building with
//! `--no-default-features` turns the parallel arm into a second sequential run.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use outcap_core::analytic::OutageTarget;
use outcap_core::montecarlo::{
    estimate_tf_outage_capacity, ir_throughput, simulate_harq_protocol, Combining,
};
use outcap_core::{Execution, McConfig, SnrPoint};

const SAMPLES: usize = 200_000;

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::parallel()),
    ]
}

fn tf_quantile(c: &mut Criterion) {
    let snr = SnrPoint::from_db(20.0).unwrap();
    let eps = OutageTarget::new(0.01).unwrap();
    let mut group = c.benchmark_group("tf_outage_capacity");
    group.throughput(Throughput::Elements(SAMPLES as u64));
    group.sample_size(20);
    for blocks in [1usize, 3] {
        for (name, exec) in modes() {
            let mc = McConfig::new(SAMPLES, 7).with_execution(exec);
            group.bench_with_input(BenchmarkId::new(name, blocks), &blocks, |b, &l| {
                b.iter(|| estimate_tf_outage_capacity(snr, black_box(l), eps, &mc).unwrap())
            });
        }
    }
    group.finish();
}

fn ir_operating_point(c: &mut Criterion) {
    let snr = SnrPoint::from_db(20.0).unwrap();
    let eps = OutageTarget::new(0.01).unwrap();
    let mut group = c.benchmark_group("ir_throughput");
    group.throughput(Throughput::Elements(SAMPLES as u64));
    group.sample_size(20);
    for (name, exec) in modes() {
        let mc = McConfig::new(SAMPLES, 7).with_execution(exec);
        group.bench_function(name, |b| {
            b.iter(|| ir_throughput(snr, black_box(3), eps, &mc).unwrap())
        });
    }
    group.finish();
}

fn protocol_simulation(c: &mut Criterion) {
    let snr = SnrPoint::from_db(10.0).unwrap();
    let mut group = c.benchmark_group("harq_protocol");
    group.throughput(Throughput::Elements(SAMPLES as u64));
    group.sample_size(20);
    for (name, exec) in modes() {
        let mc = McConfig::new(SAMPLES, 7).with_execution(exec);
        group.bench_function(name, |b| {
            b.iter(|| {
                simulate_harq_protocol(Combining::ChaseCombining, black_box(4.0), snr, 4, &mc)
                    .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, tf_quantile, ir_operating_point, protocol_simulation);
criterion_main!(benches);
