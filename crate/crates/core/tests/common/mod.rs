//! Property checks shared by the proptest suite and the acceptance runner.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rug::{Float, Rational};

use heegner_core::cyclofield::{conductor_of_lattice, CycloNumber};
use heegner_core::ellcurve::{CurveModel, CurvePoint};
use heegner_core::etaeval::{eta, eval_f, phi_point, BigComplex, PrecisionContext, UhpPoint};
use heegner_core::heegner::{isogeny_tree, tree_conductors, Quadrant};
use heegner_core::modcurve::{gamma0_equivalent, isogeny_multiplier, normalize_isogeny, LEVEL};

pub type Check = std::result::Result<(), TestCaseError>;

/// A reproducible runner: the acceptance output must not depend on the seed.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

/// A point of infinite order on each exactly represented model.
pub fn generators() -> Vec<CurvePoint<Rational>> {
    let f7 = CurvePoint::new(CurveModel::Fermat(7), q("2"), q("-1")).unwrap();
    let f13 = CurvePoint::new(CurveModel::Fermat(13), q("2513/1005"), q("-1388/1005")).unwrap();
    vec![
        f7.clone(),
        f7.transport(CurveModel::EtaModel(7)).unwrap(),
        f13.transport(CurveModel::ShortW(13)).unwrap(),
        f13.transport(CurveModel::EtaModel(13)).unwrap(),
    ]
}

fn ok<T>(r: heegner_core::Result<T>) -> std::result::Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

/// Associativity, commutativity, identity, inverses and compatibility with
/// scalar multiplication on aG, bG, cG.
pub fn group_law_exact(g: &CurvePoint<Rational>, a: i64, b: i64, c: i64) -> Check {
    let (p, q, r) = (ok(g.mul(a))?, ok(g.mul(b))?, ok(g.mul(c))?);
    let o = CurvePoint::infinity(g.model);
    let lhs = ok(ok(p.add(&q))?.add(&r))?;
    let rhs = ok(p.add(&ok(q.add(&r))?))?;
    ensure(lhs == rhs, format!("associativity on {}", g.model))?;
    ensure(ok(p.add(&q))? == ok(q.add(&p))?, "commutativity")?;
    ensure(ok(p.add(&o))? == p, "identity")?;
    ensure(ok(p.add(&p.negate()))?.is_infinity(), "inverse")?;
    ensure(ok(p.add(&q))? == ok(g.mul(a + b))?, "aG + bG = (a + b)G")?;
    for pt in [&p, &q, &r, &lhs] {
        ensure(pt.residual().is_none_or(|v| v.cmp0().is_eq()), "off the curve")?;
    }
    Ok(())
}

/// A point of y^2 + y = x^3 - 1 over C with the given x.
pub fn e9_point(re: f64, im: f64, ctx: PrecisionContext) -> CurvePoint<BigComplex> {
    let x = BigComplex::from_f64(re, im, ctx);
    let one = BigComplex::one(ctx);
    let disc = &one + &(&x.powi(3) - &one).scale_i64(4);
    let half = Float::with_val(ctx.bits(), 0.5);
    let y = (&disc.sqrt() - &one).scale(&half);
    CurvePoint::new(CurveModel::E9, x, y).unwrap()
}

fn close(a: &CurvePoint<BigComplex>, b: &CurvePoint<BigComplex>, tol: &Float) -> bool {
    match (&a.xy, &b.xy) {
        (None, None) => true,
        (Some((x1, y1)), Some((x2, y2))) => {
            let scale = Float::with_val(tol.prec(), 1) + x1.abs() + y1.abs();
            x1.dist(x2) < tol.clone() * &scale && y1.dist(y2) < tol.clone() * scale
        }
        _ => false,
    }
}

/// The group axioms for three random complex points of E9.
pub fn group_law_complex(pts: [(f64, f64); 3]) -> Check {
    let ctx = PrecisionContext::new(40);
    let [p, q, r] = pts.map(|(a, b)| e9_point(a, b, ctx));
    let tol = ctx.ten_pow_neg(20);
    let lhs = ok(ok(p.add(&q))?.add(&r))?;
    let rhs = ok(p.add(&ok(q.add(&r))?))?;
    ensure(close(&lhs, &rhs, &tol), "associativity on E9(C)")?;
    ensure(close(&ok(p.add(&q))?, &ok(q.add(&p))?, &tol), "commutativity on E9(C)")?;
    ensure(ok(p.add(&p.negate()))?.is_infinity(), "inverse on E9(C)")?;
    let res = lhs.residual().map(|v| v.abs()).unwrap_or_else(|| Float::new(ctx.bits()));
    ensure(res < tol, "sum off the curve")
}

pub fn complex_points() -> impl Strategy<Value = [(f64, f64); 3]> {
    let c = (-3.0f64..3.0, -3.0f64..3.0);
    [c.clone(), c.clone(), c]
}

/// eta(tau + 1) = e^(pi i/12) eta(tau) and eta(-1/tau) = sqrt(-i tau) eta(tau).
pub fn eta_transformations(x: f64, y: f64) -> Check {
    let ctx = PrecisionContext::new(40);
    let tau = BigComplex::from_f64(x, y, ctx);
    let at = |z: BigComplex| ok(eta(&UhpPoint::from_approx(z).unwrap(), ctx));
    let e0 = at(tau.clone())?;
    let tol = ctx.tolerance() * Float::with_val(ctx.bits(), 1e3) * e0.abs();
    let shifted = at(&tau + &BigComplex::one(ctx))?;
    ensure(shifted.dist(&(&BigComplex::exp_i_pi(1, 12, ctx) * &e0)) < tol, format!("T-law at {x}+{y}i"))?;
    let inverted = at(-tau.recip())?;
    let factor = (-tau.mul_i()).sqrt();
    let tol_s = tol * (Float::with_val(ctx.bits(), 1) + factor.abs());
    ensure(inverted.dist(&(&factor * &e0)) < tol_s, format!("S-law at {x}+{y}i"))
}

/// Phi and f at a CM point agree at d and 2d digits to the accuracy of the first.
pub fn precision_doubling(a: i64, b: i64, d: i64) -> Check {
    let tau = CycloNumber::from_ratio(a, b, d);
    let (lo, hi) = (PrecisionContext::new(30), PrecisionContext::new(60));
    let ev = |ctx: PrecisionContext| {
        let u = ok(UhpPoint::from_exact(&tau, ctx))?;
        let v = ok(phi_point(&u, ctx))?;
        let f = ok(eval_f(&u, ctx))?;
        Ok::<_, TestCaseError>((v.x, v.y, f))
    };
    let (x1, y1, f1) = ev(lo)?;
    let (x2, y2, f2) = ev(hi)?;
    for (u, v) in [(x1, x2), (y1, y2), (f1, f2)] {
        let v = v.with_ctx(lo);
        let scale = Float::with_val(lo.bits(), 1) + v.abs();
        ensure(u.dist(&v) < lo.tolerance() * scale, format!("unstable at {tau}"))?;
    }
    Ok(())
}

pub fn cm_points() -> impl Strategy<Value = (i64, i64, i64)> {
    (-30i64..30, 1i64..20, 1i64..40)
}

/// normalize_isogeny(l src, l dst) and normalize_isogeny(src, dst) are the same point of X0(243).
pub fn homothety_invariance(p_idx: usize, left: usize, right: usize, la: i64, lb: i64, ld: i64) -> Check {
    let p = [7u64, 13, 31, 43][p_idx % 4];
    let tree = isogeny_tree(p);
    let lefts: Vec<_> = tree.iter().filter(|v| v.quadrant == Quadrant::Left && v.conductor_factor == 9).collect();
    let rights: Vec<_> = tree.iter().filter(|v| v.label.ends_with("/27")).collect();
    let (src, dst) = (lefts[left % lefts.len()].lattice(), rights[right % rights.len()].lattice());
    let m = isogeny_multiplier(&src, &dst).ok_or_else(|| TestCaseError::fail("no multiplier"))?;
    let m = CycloNumber::from(m);
    let lambda = CycloNumber::from_ratio(la, lb, ld);
    prop_assume!(!lambda.is_zero());
    let base = ok(normalize_isogeny(&src, &dst, &m))?;
    let scaled = ok(normalize_isogeny(&ok(src.scale(&lambda))?, &ok(dst.scale(&lambda))?, &m))?;
    ensure(scaled.conductor == base.conductor, "conductor changed")?;
    ensure(gamma0_equivalent(&base.tau, &scaled.tau, LEVEL).is_some(), format!("{} vs {}", base.tau, scaled.tau))
}

/// Every tree vertex has its labelled conductor, and edges are 3-isogenies.
pub fn tree_labels(p: u64) -> Check {
    for (label, got, want) in tree_conductors(p) {
        ensure(got == want, format!("p={p} {label}: {got} != {want}"))?;
    }
    for v in isogeny_tree(p) {
        ensure(conductor_of_lattice(&v.lattice()) == v.conductor_factor * p, v.label.clone())?;
    }
    Ok(())
}

/// Runs a strategy through a check with the given number of cases.
pub fn run<S: Strategy>(cases: u32, strategy: S, check: impl Fn(S::Value) -> Check) -> std::result::Result<(), String> {
    runner(cases).run(&strategy, check).map_err(|e| e.to_string())
}
