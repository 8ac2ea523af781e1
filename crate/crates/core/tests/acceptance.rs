//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use rug::{Float, Rational};

use heegner_core::cyclofield::CycloNumber;
use heegner_core::ellcurve::is_three_cube;
use heegner_core::etaeval::{
    eval_f, eval_h, f_product_constant, f_product_expected, phi_at_cusp, phi_point, x_product_check, BigComplex,
    PrecisionContext, UhpPoint,
};
use heegner_core::heegner::{
    certificate, compare_with_table, construct, galois_vectors, ConstructOptions, TablePoint, TABLE,
};
use heegner_core::lseries::{l_alg, l_value, ConductorTable};
use heegner_core::qseries::{ligozat_check, verify_weierstrass_identity, x_quotient, EtaQuotient};
use heegner_core::{Case, Error};

type Outcome = Result<String, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn k(s: &str) -> CycloNumber {
    s.parse().unwrap()
}

fn weierstrass_identity() -> Outcome {
    let start = Instant::now();
    let check = verify_weierstrass_identity(&Rational::from(250)).map_err(err)?;
    let residual = check.certify().map_err(err)?;
    let elapsed = start.elapsed();
    if residual != 0 {
        return Err(format!("residual {residual}"));
    }
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("y^2 + y = x^3 - 1 through q^250 ({} terms, {elapsed:.1?})", check.terms_checked))
}

fn modularity() -> Outcome {
    let x = ligozat_check(&x_quotient());
    let f = ligozat_check(&EtaQuotient::new(81, &[(27, 1), (3, -1)]).map_err(err)?);
    if !x.is_function_on_gamma0 || !f.is_function_on_gamma0 {
        return Err(format!("x: {}; f: {}", x.details, f.details));
    }
    Ok("x on Gamma0(243), f on Gamma0(81)".into())
}

fn cusps_and_torsion_point() -> Outcome {
    let ctx = PrecisionContext::new(60);
    let tol = ctx.ten_pow_neg(45);
    let v = phi_at_cusp(&Rational::from((-1, 27)), ctx).map_err(err)?;
    if !(v.x.abs() < tol && v.y.dist(&BigComplex::omega(ctx)) < tol) {
        return Err(format!("phi(-1/27) = ({}, {})", v.x.to_string_digits(10), v.y.to_string_digits(10)));
    }
    match phi_at_cusp(&Rational::from((1, 81)), ctx) {
        Err(Error::Pole(_)) => {}
        other => return Err(format!("phi(1/81) should be a pole, got {other:?}")),
    }
    let t = phi_point(&UhpPoint::from_exact(&k("-1/27+1/27w"), ctx).map_err(err)?, ctx).map_err(err)?;
    let cbrt3 = BigComplex::from_real(Float::with_val(ctx.bits(), 3).cbrt(), ctx);
    if !(t.x.dist(&cbrt3) < tol && t.y.dist(&BigComplex::from_f64(-2.0, 0.0, ctx)) < tol) {
        return Err("phi((w-1)/27) != (cbrt 3, -2)".into());
    }
    Ok("phi(-1/27) = (0, w), pole at 1/81, phi((w-1)/27) = (cbrt 3, -2)".into())
}

fn galois_actions() -> Outcome {
    let mut n = 0;
    for p in [7, 13] {
        for case in Case::both() {
            for v in galois_vectors(p, case).map_err(err)? {
                if !v.passed() {
                    return Err(format!("{} for p={p} case {case}: word {}", v.element, v.word));
                }
                if case == Case::Two && v.element == "rho" && v.image_matches != Some(true) {
                    return Err(format!("rho image for p={p} case 2 not compared"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} Galois vectors match"))
}

fn special_values() -> Outcome {
    let ctx = PrecisionContext::new(115);
    let tol = ctx.ten_pow_neg(100);
    let h = eval_h(&UhpPoint::from_exact(&k("1/3w"), ctx).map_err(err)?, ctx).map_err(err)?;
    let three_sqrt = BigComplex::from_cyclo(&CycloNumber::sqrt_minus3(), ctx).scale_i64(3);
    if !(h.dist(&three_sqrt) < tol) {
        return Err(format!("h(w/3) = {}", h.to_string_digits(20)));
    }
    let f = eval_f(&UhpPoint::from_exact(&k("1/9w"), ctx).map_err(err)?, ctx).map_err(err)?;
    let inv_sqrt3 = Float::with_val(ctx.bits(), 3).sqrt().recip();
    let want = BigComplex::exp_i_pi(-1, 6, ctx).scale(&inv_sqrt3);
    if !(f.dist(&want) < tol) {
        return Err(format!("f(w/9) = {}", f.to_string_digits(20)));
    }
    let c = f_product_constant(ctx).map_err(err)?;
    if !(c.dist(&f_product_expected(ctx)) < tol) {
        return Err(format!("product constant = {}", c.to_string_digits(20)));
    }
    Ok("h(w/3), f(w/9) and the f-product constant to 100 digits".into())
}

fn x_product_formula() -> Outcome {
    let ctx = PrecisionContext::new(100);
    let tol = ctx.ten_pow_neg(80);
    let mut worst = Float::new(ctx.bits());
    for p in [7, 13, 31, 43] {
        for case in Case::both() {
            let r = x_product_check(p, case, ctx).map_err(err)?;
            if !(r < tol) {
                return Err(format!("p={p} case {case}: residual {}", r.to_f64()));
            }
            worst = worst.max(&r);
        }
    }
    Ok(format!("max residual {:.2e}", worst.to_f64()))
}

fn table_reproduction() -> Outcome {
    let opts = ConstructOptions::default();
    let mut rows = Vec::new();
    let primes = [7, 13, 31, 43, 79, 97, 61, 193];
    let mut checks: Vec<(u64, Case)> = primes.iter().flat_map(|&p| Case::both().map(move |c| (p, c))).collect();
    checks.extend([(67, Case::Two), (103, Case::Two), (151, Case::Two)]);
    for (p, case) in checks {
        let start = Instant::now();
        let report = construct(p, case, &opts).map_err(err)?;
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(300) {
            return Err(format!("p={p} case {case} took {elapsed:?}"));
        }
        let m = compare_with_table(p, case, report.w.as_ref()).map_err(err)?;
        if !m.passed() {
            return Err(format!("p={p} case {case}: {m:?}"));
        }
        rows.push(format!("{p}/{case}"));
    }
    Ok(format!("{} rows match", rows.len()))
}

fn cube_column() -> Outcome {
    for row in TABLE.iter() {
        let cube = is_three_cube(row.p).map_err(err)?;
        if cube != row.three_is_cube {
            return Err(format!("p={}: computed {cube}", row.p));
        }
        if certificate(row.p).map_err(err)?.disjoint == cube {
            return Err(format!("p={}: disjointness disagrees with the cube test", row.p));
        }
    }
    Ok(format!("{} rows", TABLE.len()))
}

fn l_values() -> Outcome {
    let table = ConductorTable::embedded();
    let mut n_rows = 0;
    for row in TABLE.iter().filter(|r| r.p <= 103) {
        let n = row.l_series_n();
        let v = l_alg(n, table.get(n).map_err(err)?, 20).map_err(err)?;
        if (v.value - row.l_alg as f64).abs() > 0.01 {
            return Err(format!("n={n}: {} vs {}", v.value, row.l_alg));
        }
        n_rows += 1;
    }
    Ok(format!("{n_rows} values within 0.01"))
}

fn heights() -> Outcome {
    let opts = ConstructOptions::default();
    let mut out = Vec::new();
    for row in TABLE.iter() {
        let TablePoint::Height(target) = row.point else { continue };
        let report = construct(row.p, row.case, &opts).map_err(err)?;
        let h = report.height.ok_or_else(|| format!("p={} gave no point", row.p))?;
        if (h - target).abs() > 0.05 {
            return Err(format!("p={}: {h} vs {target}", row.p));
        }
        out.push(format!("{}: {h:.4}", row.p));
    }
    Ok(out.join(", "))
}

fn properties() -> Outcome {
    for g in common::generators() {
        let strat = (-5i64..=5, -5i64..=5, -5i64..=5);
        common::run(100, strat, |(a, b, c)| common::group_law_exact(&g, a, b, c))
            .map_err(|e| format!("group law on {}: {e}", g.model))?;
    }
    common::run(100, common::complex_points(), common::group_law_complex).map_err(|e| format!("E9(C): {e}"))?;
    common::run(20, (-1.0f64..1.0, 0.2f64..3.0), |(x, y)| common::eta_transformations(x, y))
        .map_err(|e| format!("eta: {e}"))?;
    common::run(20, common::cm_points(), |(a, b, d)| common::precision_doubling(a, b, d))
        .map_err(|e| format!("precision: {e}"))?;
    let table = ConductorTable::embedded();
    for n in [21u64, 147] {
        let c = table.get(n).map_err(err)?;
        let (lo, hi) = (l_value(n, c, 15).map_err(err)?, l_value(n, c, 30).map_err(err)?);
        if Float::with_val(64, &lo.exact - &hi.exact).abs() > 1e-14 {
            return Err(format!("L-value of n={n} unstable"));
        }
    }
    let strat = (0usize..4, 0usize..6, 0usize..9, -6i64..6, -6i64..6, 1i64..5);
    common::run(100, strat, |(p, l, r, a, b, d)| common::homothety_invariance(p, l, r, a, b, d))
        .map_err(|e| format!("homothety: {e}"))?;
    for p in [7, 13, 31, 43] {
        common::tree_labels(p).map_err(|e| format!("tree: {e}"))?;
    }
    Ok("group law, eta laws, precision doubling, homothety, tree labels".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Weierstrass identity of the eta parametrization", weierstrass_identity),
        ("eta quotients are modular functions", modularity),
        ("cusp values and the 3-torsion point", cusps_and_torsion_point),
        ("Galois action by explicit matrices", galois_actions),
        ("special values at CM points", special_values),
        ("product formula for x at the base point", x_product_formula),
        ("table points reproduced", table_reproduction),
        ("cube column and non-torsion certificate", cube_column),
        ("algebraic central L-values", l_values),
        ("canonical heights", heights),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} — {detail} [{t:.1?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} — {detail} [{t:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
