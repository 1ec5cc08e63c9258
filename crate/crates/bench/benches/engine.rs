use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use mindex::character::{gamma_matrix, RandomCharacter};
use mindex::check::Context;
use mindex::deriv::Flavor;
use mindex::enumerate::counterterm_set;
use mindex::envelope::Envelope;
use mindex::renorm::{model_equations, renormalized_equation, RenormFlags};
use mindex::{builtin_spec, Homogeneity, Q};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("counterterms");
    for name in ["she_mult_1d", "gkpz", "phi4_3"] {
        let spec = builtin_spec(name).unwrap();
        group.bench_function(name, |b| b.iter(|| counterterm_set(black_box(&spec)).unwrap()));
    }
    group.finish();
}

fn model_equations_cold(c: &mut Criterion) {
    let mut group = c.benchmark_group("model_equations");
    group.sample_size(10);
    for name in ["she_mult_1d", "gkpz"] {
        let spec = builtin_spec(name).unwrap();
        let set = counterterm_set(&spec).unwrap();
        group.bench_function(name, |b| {
            b.iter_batched(
                || Envelope::new(&spec),
                |env| model_equations(&env, &set, &set).unwrap(),
                BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

fn renormalized(c: &mut Criterion) {
    let spec = builtin_spec("phi4_3").unwrap();
    let flags = RenormFlags { spatial: true, noise_even: false, merge_redundant: true };
    let mut group = c.benchmark_group("renormalized");
    group.sample_size(10);
    group.bench_function("phi4_3", |b| b.iter(|| renormalized_equation(black_box(&spec), flags, 1_000_000).unwrap()));
    group.finish();
}

fn character_matrix(c: &mut Criterion) {
    let spec = builtin_spec("gkpz").unwrap();
    let ctx = Context::new(&spec, Homogeneity::zero()).unwrap();
    let mut group = c.benchmark_group("gamma_matrix");
    group.sample_size(10);
    for flavor in [Flavor::Minus, Flavor::Plus] {
        let ch = RandomCharacter::new(&spec, flavor, 7);
        group.bench_function(format!("gkpz_{flavor:?}"), |b| {
            b.iter(|| gamma_matrix::<Q, _>(&ctx.env, &ch, black_box(&ctx.columns), &ctx.columns))
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, model_equations_cold, renormalized, character_matrix);
criterion_main!(benches);
