use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use lgi_core::explorer::{grid_scan, minimize_q, Axis, OptimizeSpec, ScanSpec, ScanSystem};
use lgi_core::{Complex, Execution, OutcomePair};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn spec(system: ScanSystem, n: usize) -> ScanSpec {
    ScanSpec {
        system,
        x: Axis::new(0.0, 8.0, n).unwrap(),
        beta: Axis::new(0.0, 3.0, n).unwrap(),
        outcomes: OutcomePair::ALL.to_vec(),
    }
}

fn scans(c: &mut Criterion) {
    let cases = [
        ("oscillator_squeezed", spec(ScanSystem::oscillator(Complex::new(0.0, 0.0), 0.5, 0.31), 120)),
        ("oscillator_thermal", spec(ScanSystem::oscillator(Complex::new(0.4, 0.1), 0.7, 0.3), 40)),
        ("field", spec(ScanSystem::field(2.0), 120)),
    ];
    let mut group = c.benchmark_group("grid_scan");
    group.sample_size(10);
    for (name, s) in &cases {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(*name, mode), s, |b, s| {
                b.iter(|| grid_scan(black_box(s), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn optimize(c: &mut Criterion) {
    let spec = OptimizeSpec::field_default();
    let mut group = c.benchmark_group("minimize_q");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new("field", mode), |b| {
            b.iter(|| minimize_q(black_box(&spec), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, scans, optimize);
criterion_main!(benches);
