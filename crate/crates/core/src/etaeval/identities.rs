//! Closed-form evaluations of f at CM points.

use rug::Float;

use super::{eval_f, phi_point, BigComplex, PrecisionContext, UhpPoint};
use crate::cyclofield::CycloNumber;
use crate::error::{Error, Result};
use crate::modcurve::base_matrix;
use crate::Case;

/// The residue j in 1..26 with j p = 4 (case 1) or 1 (case 2) mod 27.
pub fn x_product_shift(p: u64, case: Case) -> Result<u64> {
    let target = match case {
        Case::One => 4,
        Case::Two => 1,
    };
    (1..27)
        .find(|j| (j * p) % 27 == target)
        .ok_or_else(|| Error::invalid(format!("{p} is not invertible mod 27")))
}

/// |x(M(w p/9)) - e^(pi i/6) sqrt3 f(p(w-j)/27) f(p w/9) / f(p(w-j)/9)| for a given j.
pub fn x_product_residual(p: u64, case: Case, j: u64, ctx: PrecisionContext) -> Result<Float> {
    let p_i = p as i64;
    let base = CycloNumber::from_ratio(0, p_i, 9);
    let tau = base_matrix(case).act(&base)?;
    let lhs = phi_point(&UhpPoint::from_exact(&tau, ctx)?, ctx)?.x;

    let pw_j = CycloNumber::from_ints(-(p_i * j as i64), p_i);
    let f1 = eval_f(&UhpPoint::from_exact(&pw_j.scale(&(1, 27).into()), ctx)?, ctx)?;
    let f2 = eval_f(&UhpPoint::from_exact(&base, ctx)?, ctx)?;
    let f3 = eval_f(&UhpPoint::from_exact(&pw_j.scale(&(1, 9).into()), ctx)?, ctx)?;
    let sqrt3 = Float::with_val(ctx.bits(), 3).sqrt();
    let rhs = (&BigComplex::exp_i_pi(1, 6, ctx) * &(&f1 * &f2) / f3).scale(&sqrt3);
    Ok(lhs.dist(&rhs))
}

/// Residual of the f-product formula for x at the base point of (p, case).
pub fn x_product_check(p: u64, case: Case, ctx: PrecisionContext) -> Result<Float> {
    crate::cyclofield::check_prime_4_7(p)?;
    x_product_residual(p, case, x_product_shift(p, case)?, ctx)
}

/// f((w-7)/27) f(w/9) / f((w-7)/9)
pub fn f_product_constant(ctx: PrecisionContext) -> Result<BigComplex> {
    let at = |a: i64, b: i64, d: i64| -> Result<BigComplex> {
        eval_f(&UhpPoint::from_exact(&CycloNumber::from_ratio(a, b, d), ctx)?, ctx)
    };
    Ok(&(&at(-7, 1, 27)? * &at(0, 1, 9)?) / &at(-7, 1, 9)?)
}

/// -e^(pi i/6) / 3^(1/6)
pub fn f_product_expected(ctx: PrecisionContext) -> BigComplex {
    let r = Float::with_val(ctx.bits(), 3).root(6).recip();
    (-BigComplex::exp_i_pi(1, 6, ctx)).scale(&r)
}
