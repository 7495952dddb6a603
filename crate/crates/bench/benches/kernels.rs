use std::hint::black_box;

use bcsurf::diamond::a_system;
use bcsurf::fibercoh::cech_h1_fatfiber;
use bcsurf::linsys::h0_h1;
use bcsurf::skew::graded_dims;
use bcsurf::surface::{critdens_determinant, CurveCache};
use bcsurf::{Fp, Mode, Sample};
use criterion::{criterion_group, criterion_main, Criterion};

fn graded_dimensions(c: &mut Criterion) {
    c.bench_function("graded_dims generic n<=4", |b| b.iter(|| graded_dims(black_box(&Mode::Generic), 1, 4).unwrap()));
    c.bench_function("graded_dims tau-one n<=6", |b| b.iter(|| graded_dims(black_box(&Mode::TauOne), 1, 6).unwrap()));
}

fn critical_density(c: &mut Criterion) {
    c.bench_function("critdens (1,1)", |b| b.iter(|| critdens_determinant(1, 1, black_box(&[0, 1, 2, 4])).unwrap()));
}

fn fat_points(c: &mut Criterion) {
    c.bench_function("h0_h1 n=3 m=2", |b| b.iter(|| h0_h1(3, 2, 0, 0, black_box(&Mode::Generic), 1).unwrap()));
}

fn fat_fiber(c: &mut Criterion) {
    let params = Sample::random(1, 8).params();
    c.bench_function("cech a=-4 d=1", |b| {
        b.iter(|| {
            let mut cache: CurveCache<Fp> = CurveCache::new(&params);
            cech_h1_fatfiber(&mut cache, black_box(-4), 0, 1, 5, 6).unwrap()
        })
    });
}

fn diamond(c: &mut Criterion) {
    let sys = a_system();
    c.bench_function("irreducible_count n=12", |b| b.iter(|| sys.irreducible_count(black_box(12))));
}

criterion_group!(kernels, graded_dimensions, critical_density, fat_points, fat_fiber, diamond);
criterion_main!(kernels);
