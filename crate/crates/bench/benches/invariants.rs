//! Benchmarks for the exponential parts of the pipeline: bracket state sums
//! on parallel cables and the cyclotomic evaluation of τ_r.
//!
//! ```bash
//! cargo bench -p ohtsuki-bench
//! cargo bench -p ohtsuki-bench -- cable_jones
//! ```

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use ohtsuki_bench::{figure_eight, trefoil};
use ohtsuki_core::diagram::{cable, CableTuple, FramedLink};
use ohtsuki_core::fermat::{tau_r, CycContext};
use ohtsuki_core::skein::{SkeinEngine, SkeinLimits};

/// Jones polynomial of the m-parallel of a knot, with a fresh engine so no
/// memoized value is reused.
fn cable_jones(c: &mut Criterion) {
    let mut group = c.benchmark_group("cable_jones");
    group.measurement_time(Duration::from_secs(5));
    for (name, knot) in [("trefoil", trefoil()), ("figure8", figure_eight())] {
        for m in 1..=4 {
            let d = cable(&knot, &CableTuple(vec![m])).expect("cable");
            group.bench_with_input(BenchmarkId::new(name, m), &d, |b, d| {
                b.iter_batched(
                    || SkeinEngine::new(SkeinLimits::default()),
                    |e| black_box(e.jones(d).expect("jones")),
                    BatchSize::SmallInput,
                );
            });
        }
    }
    group.finish();
}

/// τ_r of +1 surgery on the trefoil, cables included.
fn tau(c: &mut Criterion) {
    let mut group = c.benchmark_group("tau_r");
    group.sample_size(10);
    let fl = FramedLink::new(trefoil(), vec![1]).expect("one framing");
    for r in [5u64, 7, 11] {
        let ctx = CycContext::new(r, 3).expect("odd prime");
        group.bench_with_input(BenchmarkId::from_parameter(r), &ctx, |b, ctx| {
            b.iter_batched(
                || SkeinEngine::new(SkeinLimits::default()),
                |e| black_box(tau_r(&e, &fl, ctx).expect("tau")),
                BatchSize::SmallInput,
            );
        });
    }
    group.finish();
}

criterion_group!(benches, cable_jones, tau);
criterion_main!(benches);
