// SPDX-License-Identifier: Apache-2.0

//! Sequential against rayon-backed enumeration. `jobs = 1` takes the plain
//! iterator path; without the `parallel` feature every job count does.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use s4census_core::census::{
    cubic_fields, enumerate_quartic_fields_with, quartic_fields, CensusOptions, ClassGroupCache,
};
use s4census_core::par::available_jobs;

fn job_counts() -> Vec<usize> {
    let n = available_jobs().max(2);
    vec![1, n]
}

fn hunter(c: &mut Criterion) {
    let mut g = c.benchmark_group("hunter");
    g.sample_size(10);
    for jobs in job_counts() {
        g.bench_with_input(BenchmarkId::new("quartic_3000", jobs), &jobs, |b, &jobs| {
            b.iter(|| quartic_fields(3000, jobs).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("cubic_5000", jobs), &jobs, |b, &jobs| {
            b.iter(|| cubic_fields(5000, jobs).unwrap())
        });
    }
    g.finish();
}

fn records(c: &mut Criterion) {
    let mut g = c.benchmark_group("records");
    g.sample_size(10);
    for jobs in job_counts() {
        g.bench_with_input(BenchmarkId::new("quartic_2000", jobs), &jobs, |b, &jobs| {
            b.iter(|| {
                // fresh cache so class groups are recomputed each time
                let cache = ClassGroupCache::in_memory();
                enumerate_quartic_fields_with(2000, &CensusOptions { jobs, cache: Some(&cache) }).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, hunter, records);
criterion_main!(benches);
