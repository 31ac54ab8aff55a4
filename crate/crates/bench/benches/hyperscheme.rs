use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hyperscheme::families::{default_grid, gab_dual_measure, gab_kernel_psd, CoshFamily};
use hyperscheme::harmonic::{character_table, dual_products};
use hyperscheme::hypergroup::hypergroup_from_scheme;
use hyperscheme::scheme::audit_multass;
use hyperscheme::Scheme;
use hyperscheme_bench::{bench_schemes, gab33};

fn schemes(c: &mut Criterion) {
    for (name, s) in bench_schemes() {
        c.bench_function(&format!("build/{name}"), |b| {
            b.iter(|| Scheme::build(s.points().to_vec(), s.classes().to_vec(), s.relation_matrix().to_vec()).unwrap())
        });
        c.bench_function(&format!("audit/{name}"), |b| {
            b.iter(|| audit_multass(black_box(s.numbers())))
        });
        let h = hypergroup_from_scheme(&s);
        c.bench_function(&format!("chartable/{name}"), |b| {
            b.iter(|| character_table(black_box(&h)).unwrap())
        });
        let tbl = character_table(&h).unwrap();
        c.bench_function(&format!("dual/{name}"), |b| {
            b.iter(|| dual_products(black_box(&tbl)).unwrap())
        });
    }
}

fn families(c: &mut Criterion) {
    let f = gab33();
    c.bench_function("gab/eval_all_200", |b| b.iter(|| f.eval_all(200, black_box(0.3))));
    c.bench_function("gab/linearization_40", |b| {
        b.iter(|| f.linearization(black_box(40), 40))
    });
    c.bench_function("gab/kernel_psd_r3", |b| {
        b.iter(|| gab_kernel_psd(&f, black_box(-0.5), 3, 5000).unwrap())
    });
    let grid = default_grid(&f, 400);
    c.bench_function("gab/dual_measure_lp", |b| {
        b.iter(|| gab_dual_measure(&f, black_box(0.125), 0.6875, 8, &grid).unwrap())
    });
    let cosh = CoshFamily::new(1.0).unwrap();
    c.bench_function("cosh/window_audit_8", |b| {
        b.iter(|| cosh.window_audit(black_box(8)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = schemes, families
}
criterion_main!(benches);
