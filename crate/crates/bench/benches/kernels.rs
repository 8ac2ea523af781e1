use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rug::Rational;

use heegner_core::ellcurve::{CurveModel, CurvePoint};
use heegner_core::etaeval::{eta, phi_point, PrecisionContext, UhpPoint};
use heegner_core::heegner::trace_point;
use heegner_core::lseries::{a_ell, coefficients};
use heegner_core::{Case, CycloNumber};

fn eta_eval(c: &mut Criterion) {
    let mut g = c.benchmark_group("eta");
    let tau: CycloNumber = "3/7+1/61w".parse().unwrap();
    for digits in [60u32, 120, 240] {
        let ctx = PrecisionContext::new(digits);
        let u = UhpPoint::from_exact(&tau, ctx).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(digits), &u, |b, u| b.iter(|| eta(black_box(u), ctx)));
    }
    g.finish();
}

fn phi(c: &mut Criterion) {
    let ctx = PrecisionContext::new(120);
    let u = UhpPoint::from_exact(&CycloNumber::from_ratio(5, 7, 9), ctx).unwrap();
    c.bench_function("phi_point/120", |b| b.iter(|| phi_point(black_box(&u), ctx)));
}

fn trace(c: &mut Criterion) {
    let mut g = c.benchmark_group("trace_point");
    g.sample_size(10);
    for p in [7u64, 13, 31] {
        let ctx = PrecisionContext::new(120);
        g.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| b.iter(|| trace_point(p, Case::One, ctx)));
    }
    g.finish();
}

fn l_series(c: &mut Criterion) {
    c.bench_function("a_ell/147/10009", |b| b.iter(|| a_ell(147, black_box(10009))));
    c.bench_function("coefficients/147/20000", |b| b.iter(|| coefficients(147, black_box(20_000))));
}

fn group_law(c: &mut Criterion) {
    let q = |s: &str| s.parse::<Rational>().unwrap();
    let p = CurvePoint::new(CurveModel::Fermat(7), q("2"), q("-1")).unwrap();
    let e = p.transport(CurveModel::EtaModel(7)).unwrap();
    let (a, b) = (e.mul(3).unwrap(), e.mul(5).unwrap());
    c.bench_function("add/eta7", |bn| bn.iter(|| black_box(&a).add(black_box(&b))));
    c.bench_function("mul/eta7/12", |bn| bn.iter(|| black_box(&e).mul(12)));
}

criterion_group!(benches, eta_eval, phi, trace, l_series, group_law);
criterion_main!(benches);
