use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use crham::least_action::least_action_blockdiag;
use crham::linalg::{c, Mat};
use crham::perturbation::build_series;
use crham::pipeline::{effective_cr, Method};
use crham::sweep::{run_sweep, Axis, AxisName, MethodKind};
use crham::{DeviceParams, DriveSpec, HermitianOp, Ordering, PerturbationProblem, SweepConfig};
use crham_bench::driven_benchmark;

fn least_action(crit: &mut Criterion) {
    let mut group = crit.benchmark_group("least_action");
    for levels in [3, 5, 7] {
        let (h, partition) = driven_benchmark(levels, 0.04);
        group.bench_with_input(BenchmarkId::from_parameter(levels), &levels, |b, _| {
            b.iter(|| least_action_blockdiag(black_box(&h), &partition).unwrap())
        });
    }
    group.finish();
}

fn perturbative(crit: &mut Criterion) {
    let (h, partition) = driven_benchmark(5, 0.04);
    let m = h.matrix();
    let h0 = Mat::from_fn(m.nrows(), m.ncols(), |r, s| if r == s { m[(r, s)] } else { c(0.0) });
    let h1 = (m - &h0) * c(1.0 / 0.04);
    let mut group = crit.benchmark_group("perturbative_series");
    for order in [1, 3, 5] {
        let problem = PerturbationProblem::new(
            HermitianOp::new(h0.clone(), Ordering::Ladder).unwrap(),
            HermitianOp::symmetrized(h1.clone(), Ordering::Ladder),
            0.04,
            partition.clone(),
            order,
        )
        .unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, _| {
            b.iter(|| build_series(black_box(&problem)).unwrap())
        });
    }
    group.finish();
}

fn end_to_end(crit: &mut Criterion) {
    let params = DeviceParams::benchmark();
    let drive = DriveSpec::control_x(0.02);
    crit.bench_function("effective_cr/exact", |b| {
        b.iter(|| effective_cr(black_box(&params), &drive, Method::Exact).unwrap())
    });
    crit.bench_function("effective_cr/pert3", |b| {
        b.iter(|| effective_cr(black_box(&params), &drive, Method::Perturbative { order: 3 }).unwrap())
    });

    let cfg = SweepConfig {
        axis1: Axis {
            name: AxisName::Omega,
            start: 0.0,
            stop: 0.1,
            points: 16,
        },
        method: MethodKind::Exact,
        ..SweepConfig::default()
    };
    let mut group = crit.benchmark_group("sweep_16_points");
    group.sample_size(10);
    for threads in [1, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| run_sweep(black_box(&cfg), Some(t)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, least_action, perturbative, end_to_end);
criterion_main!(benches);
