//! Benchmarks over the algorithms with non-trivial asymptotics: the
//! exhaustive sheaf oracle, point enumeration, frame pushouts,
//! sheafification, and the coidempotent frame of a product quantale.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use pointless_core::catalog;
use pointless_core::lattice::{frame_pushout, hom_enumerate_frame, points, PushoutLimits};
use pointless_core::quantale::cidem_lattice;
use pointless_core::sheaves::{is_sheaf_oracle, sheafify};
use pointless_core::{MonoidalPoset, Presheaf};

fn bench_sheaf_oracle(c: &mut Criterion) {
    let sheaf = sheafify(&Presheaf::constant(catalog::square(), &["k0", "k1"]))
        .expect("sheafification succeeds")
        .sheaf;
    c.bench_function("sheaf-oracle/square-pair-sheaf", |b| {
        b.iter(|| is_sheaf_oracle(black_box(&sheaf)))
    });
}

fn bench_points(c: &mut Criterion) {
    let chain = catalog::chain(5);
    c.bench_function("points/chain5", |b| b.iter(|| points(black_box(&chain))));
    let stem = catalog::square_stem_top();
    c.bench_function("points/square-stem-top", |b| b.iter(|| points(black_box(&stem))));
}

fn bench_pushout(c: &mut Criterion) {
    let two = catalog::two();
    let sierp = catalog::sierp();
    let leg = hom_enumerate_frame(&two, &sierp)
        .into_iter()
        .next()
        .expect("the initial frame maps in uniquely");
    let limits = PushoutLimits::default();
    c.bench_function("pushout/sierp-over-two", |b| {
        b.iter(|| frame_pushout(black_box(&leg), black_box(&leg), &limits).expect("in bounds"))
    });
}

fn bench_sheafify(c: &mut Criterion) {
    let f = Presheaf::constant(catalog::square(), &["k0", "k1"]);
    c.bench_function("sheafify/square-constant-pair", |b| {
        b.iter(|| sheafify(black_box(&f)).expect("sheafification succeeds"))
    });
}

fn bench_cidem_lattice(c: &mut Criterion) {
    let q = MonoidalPoset::product(&catalog::luk3(), &catalog::luk3())
        .expect("products of quantales exist");
    c.bench_function("cidem-lattice/luk3-squared", |b| {
        b.iter(|| cidem_lattice(black_box(&q)).expect("fully flagged"))
    });
}

criterion_group!(
    benches,
    bench_sheaf_oracle,
    bench_points,
    bench_pushout,
    bench_sheafify,
    bench_cidem_lattice
);
criterion_main!(benches);
