use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use strongirr::{
    alexander_twist, certify_twist_coprime, decide_strong_irreducibility, factor_over_q,
    newton_polygon, BigInt, IntPolynomial,
};

fn parse(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

fn inputs() -> Vec<(&'static str, IntPolynomial)> {
    let product = &(&parse("t^3-2") * &parse("t^4+t+1")) * &parse("3t^2-5t+7");
    vec![
        ("12a1163", parse("8t^4-26t^3+35t^2-26t+8")),
        (
            "twist216_t3",
            alexander_twist(216).unwrap().substitute_power(3).unwrap(),
        ),
        ("swinnerton_dyer", parse("t^8-40t^6+352t^4-960t^2+576")),
        ("product", product),
    ]
}

fn factor(c: &mut Criterion) {
    let mut g = c.benchmark_group("factor_over_q");
    for (name, f) in inputs() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| {
            b.iter(|| factor_over_q(black_box(f)).unwrap())
        });
    }
    g.finish();
}

fn newton(c: &mut Criterion) {
    let f = parse("8t^4-26t^3+35t^2-26t+8");
    let mut g = c.benchmark_group("newton_polygon");
    for p in [2u32, 13] {
        let p = BigInt::from(p);
        g.bench_with_input(BenchmarkId::from_parameter(&p), &p, |b, p| {
            b.iter(|| newton_polygon(black_box(&f), p).unwrap())
        });
    }
    g.finish();
}

fn decide(c: &mut Criterion) {
    let mut g = c.benchmark_group("decide_strong_irreducibility");
    for n in [4u64, 12, 27, 216] {
        let f = alexander_twist(n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| decide_strong_irreducibility(black_box(f), 8).unwrap())
        });
    }
    g.finish();
}

fn twist_sweep(c: &mut Criterion) {
    c.bench_function("certify_twist_coprime n<m<=30", |b| {
        b.iter(|| {
            for n in 1..=30u64 {
                for m in n + 1..=30 {
                    black_box(certify_twist_coprime(n, m).unwrap());
                }
            }
        })
    });
}

criterion_group!(benches, factor, newton, decide, twist_sweep);
criterion_main!(benches);
