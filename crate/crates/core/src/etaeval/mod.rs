//! High-precision evaluation of the Dedekind eta function and of the eta
//! quotients x, y, f, h on the upper half plane.
//!
//! Every evaluation first moves the argument into the standard fundamental
//! domain of SL2(Z), tracking the exact multiplier picked up from
//! eta(z + 1) = e^(pi i/12) eta(z) and eta(-1/z) = sqrt(-iz) eta(z), so the
//! product is only ever summed where |q| <= e^(-pi sqrt 3).

mod complex;
mod identities;

pub use complex::{BigComplex, PrecisionContext};
pub use identities::{x_product_check, x_product_shift, x_product_residual, f_product_constant, f_product_expected};

use rug::{Float, Integer, Rational};

use crate::cyclofield::CycloNumber;
use crate::error::{Error, Result};
use crate::modcurve::ProjMatrix;
use crate::qseries::x_quotient;

/// A point of the upper half plane, exact when it lies in K.
#[derive(Clone, Debug, PartialEq)]
pub struct UhpPoint {
    pub exact: Option<CycloNumber>,
    pub approx: BigComplex,
}

impl UhpPoint {
    pub fn from_exact(tau: &CycloNumber, ctx: PrecisionContext) -> Result<Self> {
        if tau.b().cmp0().is_le() {
            return Err(Error::Domain(format!("{tau} is not in the upper half plane")));
        }
        Ok(UhpPoint {
            exact: Some(tau.clone()),
            approx: BigComplex::from_cyclo(tau, ctx),
        })
    }

    pub fn from_approx(z: BigComplex) -> Result<Self> {
        if z.im.cmp0() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Domain(format!("Im({z}) <= 0")));
        }
        Ok(UhpPoint {
            exact: None,
            approx: z,
        })
    }

    pub fn ctx(&self) -> PrecisionContext {
        self.approx.ctx()
    }

    /// k * tau
    pub fn scale(&self, k: i64) -> Self {
        match &self.exact {
            Some(t) => UhpPoint::from_exact(&(t * &CycloNumber::from(k)), self.ctx()).unwrap(),
            None => UhpPoint {
                exact: None,
                approx: self.approx.scale_i64(k),
            },
        }
    }

    /// tau / k
    pub fn divide(&self, k: i64) -> Self {
        match &self.exact {
            Some(t) => {
                let s = t.scale(&Rational::from((1, k)));
                UhpPoint::from_exact(&s, self.ctx()).unwrap()
            }
            None => {
                let r = Float::with_val(self.ctx().bits(), 1) / k;
                UhpPoint {
                    exact: None,
                    approx: self.approx.scale(&r),
                }
            }
        }
    }
}

/// Sum of (-1)^n q^(n(3n-1)/2) over all n, i.e. prod (1 - q^n).
fn pentagonal_sum(q: &BigComplex) -> BigComplex {
    let ctx = q.ctx();
    let eps = Float::with_val(ctx.bits(), 1) >> (ctx.bits() as i32 + 4);
    let q3 = q.powi(3);
    let mut sum = BigComplex::one(ctx);
    let mut a = q.clone(); // q^(n(3n-1)/2)
    let mut qn = q.clone(); // q^n
    let mut step = q.powi(4); // q^(3n+1)
    let mut n = 1u64;
    loop {
        let b = &a * &qn;
        let term = &a + &b;
        if n % 2 == 1 {
            sum = &sum - &term;
        } else {
            sum = &sum + &term;
        }
        if a.abs() < eps {
            break;
        }
        a = &a * &step;
        step = &step * &q3;
        qn = &qn * q;
        n += 1;
    }
    sum
}

/// eta at a point already in the fundamental domain.
fn eta_reduced(z: &BigComplex) -> BigComplex {
    let ctx = z.ctx();
    let two_pi_i_z = z.mul_i().scale(&(ctx.pi() * 2u32));
    let q = two_pi_i_z.exp();
    let q24 = two_pi_i_z.scale(&(Float::with_val(ctx.bits(), 1) / 24u32)).exp();
    &q24 * &pentagonal_sum(&q)
}

/// Dedekind eta(tau) = q^(1/24) prod (1 - q^n), q = e^(2 pi i tau).
pub fn eta(tau: &UhpPoint, ctx: PrecisionContext) -> Result<BigComplex> {
    ctx.check(&tau.ctx())?;
    match &tau.exact {
        Some(t) => Ok(eta_exact(t, ctx)),
        None => Ok(eta_approx(&tau.approx)),
    }
}

fn eta_exact(tau: &CycloNumber, ctx: PrecisionContext) -> BigComplex {
    let mut t = tau.clone();
    let mut phase: i64 = 0; // multiples of pi i / 12
    let mut factor = BigComplex::one(ctx);
    loop {
        let half = Rational::from((1, 2));
        let n = (t.re() + &half).floor();
        if n != 0 {
            let n_int = n.numer().to_i64().expect("shift fits in i64");
            phase += n_int;
            t = &t - &CycloNumber::from(n);
        }
        let norm = t.norm();
        if norm < 1 || (norm == 1 && t.re().cmp0().is_gt()) {
            // eta(t) = eta(-1/t) / sqrt(-i t)
            let z = BigComplex::from_cyclo(&t, ctx);
            factor = &factor / &(-z.mul_i()).sqrt();
            t = &CycloNumber::from(-1) / &t;
            continue;
        }
        break;
    }
    let z = BigComplex::from_cyclo(&t, ctx);
    let mult = BigComplex::exp_i_pi(phase.rem_euclid(24), 12, ctx);
    &(&mult * &factor) * &eta_reduced(&z)
}

fn eta_approx(z0: &BigComplex) -> BigComplex {
    let ctx = z0.ctx();
    let mut z = z0.clone();
    let mut phase: i64 = 0;
    let mut factor = BigComplex::one(ctx);
    let one = Float::with_val(ctx.bits(), 1);
    loop {
        let n = Float::with_val(ctx.bits(), &z.re + 0.5f64).floor();
        if !n.is_zero() {
            let n_int = n.to_integer().unwrap().to_i64().expect("shift fits in i64");
            phase += n_int;
            z = &z - &BigComplex::from_real(n, ctx);
        }
        let norm = Float::with_val(ctx.bits(), z.re.square_ref()) + Float::with_val(ctx.bits(), z.im.square_ref());
        if norm < one {
            factor = &factor / &(-z.mul_i()).sqrt();
            z = -z.recip();
            continue;
        }
        break;
    }
    let mult = BigComplex::exp_i_pi(phase.rem_euclid(24), 12, ctx);
    &(&mult * &factor) * &eta_reduced(&z)
}

/// eta(k tau)
fn eta_at(tau: &UhpPoint, k: i64, ctx: PrecisionContext) -> Result<BigComplex> {
    eta(&tau.scale(k), ctx)
}

/// The value of the parametrization at a point of the upper half plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiValue {
    pub x: BigComplex,
    pub y: BigComplex,
    /// y was taken as the root of y^2 + y = x^3 - 1 nearest the eta formula,
    /// because the formula's denominator cancelled.
    pub y_from_curve: bool,
}

impl PhiValue {
    /// |y^2 + y - x^3 + 1|
    pub fn residual(&self) -> Float {
        let ctx = self.x.ctx();
        let lhs = &(&self.y.square() + &self.y) - &(&self.x.powi(3) - &BigComplex::one(ctx));
        lhs.abs()
    }
}

/// Phi(tau) = (x(tau), y(tau)) on y^2 + y = x^3 - 1, with
/// x = eta9 eta27 / (eta3 eta81) and
/// y = -(eta9^4 + 9 eta9 eta81^3) / (eta27^4 - 3 eta9 eta81^3) - 2.
pub fn phi_point(tau: &UhpPoint, ctx: PrecisionContext) -> Result<PhiValue> {
    ctx.check(&tau.ctx())?;
    let e3 = eta_at(tau, 3, ctx)?;
    let e9 = eta_at(tau, 9, ctx)?;
    let e27 = eta_at(tau, 27, ctx)?;
    let e81 = eta_at(tau, 81, ctx)?;
    let x = &(&e9 * &e27) / &(&e3 * &e81);
    let e9e81_3 = &e9 * &e81.powi(3);
    let num = &e9.powi(4) + &e9e81_3.scale_i64(9);
    let t1 = e27.powi(4);
    let t2 = e9e81_3.scale_i64(3);
    let den = &t1 - &t2;
    let big = std::cmp::max_by(t1.abs(), t2.abs(), |a, b| a.partial_cmp(b).unwrap());
    let den_abs = den.abs();
    let lost_digits = if den_abs.is_zero() {
        f64::INFINITY
    } else {
        (big / &den_abs).log10().to_f64()
    };
    let two = BigComplex::from_f64(2.0, 0.0, ctx);
    if lost_digits <= ctx.guard as f64 {
        let y = &(-(&num / &den)) - &two;
        return Ok(PhiValue { x, y, y_from_curve: false });
    }
    // roots of y^2 + y - (x^3 - 1)
    let disc = &BigComplex::one(ctx) + &(&x.powi(3) - &BigComplex::one(ctx)).scale_i64(4);
    let s = disc.sqrt();
    let half = Float::with_val(ctx.bits(), 0.5);
    let r1 = (&s - &BigComplex::one(ctx)).scale(&half);
    let r2 = (&(-&s) - &BigComplex::one(ctx)).scale(&half);
    if den_abs.is_zero() {
        return Err(Error::Precision(
            "y denominator vanished; cannot choose a root of the curve equation".into(),
        ));
    }
    let estimate = &(-(&num / &den)) - &two;
    let y = if r1.dist(&estimate) <= r2.dist(&estimate) { r1 } else { r2 };
    Ok(PhiValue { x, y, y_from_curve: true })
}

/// (a b; c d) in SL2(Z) with gamma(infinity) = a/c.
fn matrix_to_cusp(cusp: &Rational) -> ProjMatrix {
    let a = cusp.numer().clone();
    let c = cusp.denom().clone();
    // a d - b c = 1
    let (_, s, t) = a.clone().gcd_cofactors(c.clone(), Integer::new());
    let (a, b, c, d) = (a, -t, c, s);
    ProjMatrix::new(
        a.to_i128().unwrap(),
        b.to_i128().unwrap(),
        c.to_i128().unwrap(),
        d.to_i128().unwrap(),
    )
}

/// Phi at the cusp a/c of X0(243): a pole error where x has a pole,
/// otherwise the limit along a vertical path in the cusp's local chart.
pub fn phi_at_cusp(cusp: &Rational, ctx: PrecisionContext) -> Result<PhiValue> {
    let n = 243u64;
    let c = cusp.denom().to_u64().ok_or_else(|| Error::invalid("cusp denominator too large"))?;
    let g = Integer::from(c).gcd(&Integer::from(n)).to_u64().unwrap();
    let order = x_quotient().order_at_cusp(g);
    if order < 0 {
        return Err(Error::Pole(format!("x has a pole of order {} at the cusp {cusp}", -order)));
    }
    let width = n / Integer::from(g * g).gcd(&Integer::from(n)).to_u64().unwrap();
    // |q_w| = e^(-2 pi sqrt3 m / w) ~ 10^(-4.7 m / w)
    let m = (ctx.digits as u64 * width).div_ceil(4) as i64 + 1;
    let z0 = CycloNumber::sqrt_minus3() * CycloNumber::from(m);
    let tau = matrix_to_cusp(cusp).act(&z0)?;
    phi_point(&UhpPoint::from_exact(&tau, ctx)?, ctx)
}

/// f(tau) = eta(27 tau) / eta(3 tau)
pub fn eval_f(tau: &UhpPoint, ctx: PrecisionContext) -> Result<BigComplex> {
    Ok(&eta_at(tau, 27, ctx)? / &eta_at(tau, 3, ctx)?)
}

/// h(tau) = f(tau/3)^(-3) = (eta(tau) / eta(9 tau))^3
pub fn eval_h(tau: &UhpPoint, ctx: PrecisionContext) -> Result<BigComplex> {
    let f = eval_f(&tau.divide(3), ctx)?;
    Ok(f.powi(-3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> CycloNumber {
        s.parse().unwrap()
    }

    #[test]
    fn eta_at_i() {
        let ctx = PrecisionContext::new(40);
        let i = BigComplex::i(ctx);
        let v = eta(&UhpPoint::from_approx(i).unwrap(), ctx).unwrap();
        // Gamma(1/4) / (2 pi^(3/4))
        let g = Float::with_val(ctx.bits(), 0.25).gamma();
        let expected = g / (Float::with_val(ctx.bits(), ctx.pi().ln() * 0.75f64).exp() * 2u32);
        assert!(v.dist(&BigComplex::from_real(expected, ctx)) < ctx.tolerance());
    }

    #[test]
    fn exact_and_approx_paths_agree() {
        let ctx = PrecisionContext::new(50);
        let t = k("3/7+1/61w");
        let a = eta(&UhpPoint::from_exact(&t, ctx).unwrap(), ctx).unwrap();
        let b = eta(&UhpPoint::from_approx(BigComplex::from_cyclo(&t, ctx)).unwrap(), ctx).unwrap();
        assert!(a.dist(&b) < ctx.tolerance() * a.abs());
    }

    #[test]
    fn domain_and_context_errors() {
        let ctx = PrecisionContext::new(30);
        assert!(matches!(UhpPoint::from_exact(&k("1/2"), ctx), Err(Error::Domain(_))));
        let p = UhpPoint::from_exact(&k("w"), ctx).unwrap();
        assert!(matches!(eta(&p, PrecisionContext::new(31)), Err(Error::ContextMismatch(..))));
    }

    #[test]
    fn cusp_values() {
        let ctx = PrecisionContext::new(60);
        let tol = ctx.ten_pow_neg(45);
        let v = phi_at_cusp(&Rational::from((-1, 27)), ctx).unwrap();
        assert!(v.x.abs() < tol);
        assert!(v.y.dist(&BigComplex::omega(ctx)) < tol);
        assert!(matches!(phi_at_cusp(&Rational::from((1, 81)), ctx), Err(Error::Pole(_))));
    }

    #[test]
    fn phi_torsion_point() {
        let ctx = PrecisionContext::new(60);
        let v = phi_point(&UhpPoint::from_exact(&k("-1/27+1/27w"), ctx).unwrap(), ctx).unwrap();
        let cbrt3 = Float::with_val(ctx.bits(), 3).cbrt();
        assert!(v.x.dist(&BigComplex::from_real(cbrt3, ctx)) < ctx.ten_pow_neg(45));
        assert!(v.y.dist(&BigComplex::from_f64(-2.0, 0.0, ctx)) < ctx.ten_pow_neg(45));
        assert!(v.residual() < ctx.tolerance());
    }
}
