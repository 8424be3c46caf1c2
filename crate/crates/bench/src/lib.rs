//! Criterion benchmarks over the heavier routines of `superschur-core`.

use std::hint::black_box;

use criterion::Criterion;

use superschur_core::arith::{h_sum, FieldConfig};
use superschur_core::bidet::{factor_basis_report, Straightener};
use superschur_core::dist::{
    commutation_suite, kernel_suite, DistContext, MixedModule, DEFAULT_BASIS_LIMIT,
};
use superschur_core::superpoly::check_invariant_mod_l;
use superschur_core::Weight;

fn weight(s: &str) -> Weight {
    s.parse().expect("valid weight")
}

pub fn benchmarks(c: &mut Criterion) {
    let f3 = FieldConfig::prime(3).unwrap();
    let q = FieldConfig::rational();

    c.bench_function("h_sum q=27 all t", |b| {
        b.iter(|| {
            (0..27)
                .map(|t| h_sum(t, 27, black_box(40)).unwrap())
                .filter(|v| v.is_one())
                .count()
        })
    });

    let mut g = c.benchmark_group("factor basis");
    g.sample_size(10);
    g.bench_function("GL(2|1) 1,0|0 over F3", |b| {
        b.iter(|| factor_basis_report(&weight("1,0|0"), &f3, false).unwrap())
    });
    g.bench_function("GL(1|1) 1|1 over Q", |b| {
        b.iter(|| factor_basis_report(&weight("1|1"), &q, false).unwrap())
    });
    g.finish();

    let mut g = c.benchmark_group("straightening");
    g.sample_size(10);
    g.bench_function("GL(3) (2,1) setup", |b| {
        b.iter(|| {
            Straightener::new(&q, &weight("2,1,0|"), 0, 0)
                .unwrap()
                .rank()
        })
    });
    g.finish();

    let ctx21 = DistContext::new(2, 1, f3).unwrap();
    let ctx22 = DistContext::new(2, 2, f3).unwrap();
    let mut g = c.benchmark_group("dist");
    g.sample_size(10);
    g.bench_function("commutation GL(2|2) q=9 V2W1", |b| {
        b.iter(|| {
            commutation_suite(&ctx22, 9, MixedModule::new(2, 1), DEFAULT_BASIS_LIMIT)
                .unwrap()
                .len()
        })
    });
    g.bench_function("kernel GL(2|1) l=0 q=3 k<=2", |b| {
        b.iter(|| {
            kernel_suite(&ctx21, 0, 3, 2, DEFAULT_BASIS_LIMIT)
                .unwrap()
                .len()
        })
    });
    g.finish();

    let mut g = c.benchmark_group("invariance");
    g.sample_size(10);
    g.bench_function("GL(2|2) z_31", |b| {
        b.iter(|| check_invariant_mod_l(2, 2, &q, 3, 1, 2).unwrap().holds)
    });
    g.finish();
}
