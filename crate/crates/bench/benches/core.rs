use criterion::{criterion_group, criterion_main, Criterion};
use lazard_bench::{ctx, dense_span, free_class4, grid_actions, grid_pairs, spread};
use lazard_core::bch::{hausdorff_table, Bch};
use lazard_core::catalog::iso_test_3dim;
use lazard_core::{classify_mod, GroupElement};
use std::hint::black_box;

fn classify(c: &mut Criterion) {
    let k = ctx(8);
    let grid = grid_actions(&k);
    c.bench_function("classify soluble grid N=8", |b| {
        b.iter(|| {
            for a in &grid {
                black_box(classify_mod(a).unwrap());
            }
        })
    });
}

fn hausdorff(c: &mut Criterion) {
    let mut g = c.benchmark_group("hausdorff");
    for w in [4, 6] {
        g.bench_function(format!("table weight {w}"), |b| b.iter(|| hausdorff_table(black_box(w))));
    }
    g.finish();

    let k = ctx(10);
    let l = free_class4(&k);
    let law = Bch::new(&l).unwrap();
    let (u, v) = (spread(&k, l.dim(), 11, 3), spread(&k, l.dim(), 17, 1));
    c.bench_function("bch mul free class 4 rank 3", |b| b.iter(|| law.mul(black_box(&u), black_box(&v))));
}

fn spans(c: &mut Criterion) {
    let k = ctx(12);
    let mut g = c.benchmark_group("span");
    for dim in [4, 8, 16] {
        let s = dense_span(&k, dim);
        g.bench_function(format!("saturate dim {dim}"), |b| b.iter(|| black_box(&s).saturate()));
        g.bench_function(format!("howell form dim {dim}"), |b| {
            b.iter(|| dense_span(&k, black_box(dim)))
        });
    }
    g.finish();
}

fn groups(c: &mut Criterion) {
    let k = ctx(12);
    let pairs = grid_pairs(&k);
    let g = &pairs[pairs.len() / 2].group;
    let x = GroupElement::new(1234, spread(&k, 2, 99, 7));
    let y = GroupElement::new(5678, spread(&k, 2, 31, 2));
    c.bench_function("semidirect mul", |b| b.iter(|| g.mul(black_box(&x), black_box(&y))));
    c.bench_function("semidirect pow 5^6", |b| b.iter(|| g.pow_int(black_box(&x), 15625)));
}

fn iso(c: &mut Criterion) {
    let k = ctx(14);
    let pairs = grid_pairs(&k);
    let (a, b) = (&pairs[3].lattice, &pairs[pairs.len() - 2].lattice);
    c.bench_function("iso test two grid lattices N=14", |bch| {
        bch.iter(|| iso_test_3dim(black_box(a), black_box(b)).unwrap())
    });
}

criterion_group!(benches, classify, hausdorff, spans, groups, iso);
criterion_main!(benches);
