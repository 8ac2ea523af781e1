use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

use crate::cyclofield::CycloNumber;
use crate::error::{Error, Result};

/// Working precision: `digits` decimal digits of output accuracy, with
/// `guard` extra digits carried internally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrecisionContext {
    pub digits: u32,
    pub guard: u32,
}

impl PrecisionContext {
    pub const DEFAULT_GUARD: u32 = 15;

    pub fn new(digits: u32) -> Self {
        PrecisionContext {
            digits,
            guard: Self::DEFAULT_GUARD,
        }
    }

    pub fn with_guard(digits: u32, guard: u32) -> Self {
        PrecisionContext { digits, guard }
    }

    /// Binary precision of every Float in this context.
    pub fn bits(&self) -> u32 {
        ((self.digits + self.guard) as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    pub fn scaled(&self, num: u32, den: u32) -> Self {
        PrecisionContext {
            digits: (self.digits * num).div_ceil(den),
            guard: self.guard,
        }
    }

    /// 10^(-e)
    pub fn ten_pow_neg(&self, e: i64) -> Float {
        let ten = Float::with_val(self.bits(), 10);
        ten.pow(-e)
    }

    /// The accuracy promised by outputs: 10^(-(digits - guard)).
    pub fn tolerance(&self) -> Float {
        self.ten_pow_neg(self.digits as i64 - self.guard as i64)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    pub fn real(&self, v: f64) -> Float {
        Float::with_val(self.bits(), v)
    }

    pub fn rational(&self, r: &Rational) -> Float {
        Float::with_val(self.bits(), r)
    }

    pub fn check(&self, other: &PrecisionContext) -> Result<()> {
        if self != other {
            return Err(Error::ContextMismatch(self.digits, other.digits));
        }
        Ok(())
    }
}

/// A complex number re + i*im carried at the precision of its context.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
    ctx: PrecisionContext,
}

impl BigComplex {
    pub fn new(re: Float, im: Float, ctx: PrecisionContext) -> Self {
        let bits = ctx.bits();
        BigComplex {
            re: Float::with_val(bits, re),
            im: Float::with_val(bits, im),
            ctx,
        }
    }

    pub fn ctx(&self) -> PrecisionContext {
        self.ctx
    }

    pub fn zero(ctx: PrecisionContext) -> Self {
        Self::from_f64(0.0, 0.0, ctx)
    }

    pub fn one(ctx: PrecisionContext) -> Self {
        Self::from_f64(1.0, 0.0, ctx)
    }

    pub fn i(ctx: PrecisionContext) -> Self {
        Self::from_f64(0.0, 1.0, ctx)
    }

    pub fn from_f64(re: f64, im: f64, ctx: PrecisionContext) -> Self {
        BigComplex {
            re: ctx.real(re),
            im: ctx.real(im),
            ctx,
        }
    }

    pub fn from_real(re: Float, ctx: PrecisionContext) -> Self {
        Self::new(re, ctx.real(0.0), ctx)
    }

    pub fn from_rational(r: &Rational, ctx: PrecisionContext) -> Self {
        Self::from_real(ctx.rational(r), ctx)
    }

    /// Complex embedding with w = (-1 + sqrt(-3))/2.
    pub fn from_cyclo(x: &CycloNumber, ctx: PrecisionContext) -> Self {
        let b = ctx.rational(x.b());
        let re = ctx.rational(&x.re());
        let sqrt3 = ctx.real(3.0).sqrt();
        let im = b * sqrt3 / 2u32;
        BigComplex { re, im, ctx }
    }

    pub fn omega(ctx: PrecisionContext) -> Self {
        Self::from_cyclo(&CycloNumber::omega(), ctx)
    }

    /// e^(i*pi*num/den)
    pub fn exp_i_pi(num: i64, den: i64, ctx: PrecisionContext) -> Self {
        let theta = ctx.pi() * Float::with_val(ctx.bits(), num) / Float::with_val(ctx.bits(), den);
        let (s, c) = theta.sin_cos(Float::new(ctx.bits()));
        BigComplex { re: c, im: s, ctx }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: Float::with_val(self.ctx.bits(), -&self.im),
            ctx: self.ctx,
        }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.ctx.bits(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.ctx.bits(), self.im.atan2_ref(&self.re))
    }

    /// |a - b|
    pub fn dist(&self, other: &BigComplex) -> Float {
        (self - other).abs()
    }

    pub fn scale(&self, r: &Float) -> Self {
        let bits = self.ctx.bits();
        BigComplex {
            re: Float::with_val(bits, &self.re * r),
            im: Float::with_val(bits, &self.im * r),
            ctx: self.ctx,
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&Float::with_val(self.ctx.bits(), k))
    }

    pub fn mul_i(&self) -> Self {
        BigComplex {
            re: Float::with_val(self.ctx.bits(), -&self.im),
            im: self.re.clone(),
            ctx: self.ctx,
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, e: i32) -> Self {
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = BigComplex::one(self.ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            n >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        let bits = self.ctx.bits();
        let n = Float::with_val(bits, self.re.square_ref()) + Float::with_val(bits, self.im.square_ref());
        BigComplex {
            re: Float::with_val(bits, &self.re / &n),
            im: Float::with_val(bits, -&self.im) / n,
            ctx: self.ctx,
        }
    }

    /// e^z
    pub fn exp(&self) -> Self {
        let bits = self.ctx.bits();
        let r = Float::with_val(bits, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(bits));
        BigComplex {
            re: Float::with_val(bits, &r * &c),
            im: r * s,
            ctx: self.ctx,
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        BigComplex {
            re: self.abs().ln(),
            im: self.arg(),
            ctx: self.ctx,
        }
    }

    /// Principal square root (branch cut along the negative reals).
    pub fn sqrt(&self) -> Self {
        let bits = self.ctx.bits();
        if self.re.is_zero() && self.im.is_zero() {
            return BigComplex::zero(self.ctx);
        }
        let m = self.abs();
        if self.re >= 0 {
            let s = (Float::with_val(bits, &m + &self.re) / 2u32).sqrt();
            let t = Float::with_val(bits, &self.im / &s) / 2u32;
            BigComplex { re: s, im: t, ctx: self.ctx }
        } else {
            let mut t = (Float::with_val(bits, &m - &self.re) / 2u32).sqrt();
            let s = Float::with_val(bits, self.im.abs_ref()) / &t / 2u32;
            if self.im.is_sign_negative() && !self.im.is_zero() {
                t = -t;
            }
            BigComplex { re: s, im: t, ctx: self.ctx }
        }
    }

    /// Principal power z^(num/den).
    pub fn pow_ratio(&self, num: i64, den: i64) -> Self {
        if self.re.is_zero() && self.im.is_zero() {
            return BigComplex::zero(self.ctx);
        }
        let r = Float::with_val(self.ctx.bits(), num) / Float::with_val(self.ctx.bits(), den);
        self.ln().scale(&r).exp()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = self.re.to_string_radix(10, Some(digits));
        let im = self.im.to_string_radix(10, Some(digits));
        if im.starts_with('-') {
            format!("{re} - {}i", &im[1..])
        } else {
            format!("{re} + {im}i")
        }
    }

    pub fn cmp_abs(&self, other: &BigComplex) -> Ordering {
        self.abs().partial_cmp(&other.abs()).unwrap_or(Ordering::Equal)
    }

    pub fn with_ctx(&self, ctx: PrecisionContext) -> Self {
        BigComplex::new(self.re.clone(), self.im.clone(), ctx)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_digits(self.ctx.digits.min(30) as usize))
    }
}

fn same_ctx(a: &BigComplex, b: &BigComplex) {
    assert_eq!(
        a.ctx, b.ctx,
        "mixed precision contexts ({} vs {} digits)",
        a.ctx.digits, b.ctx.digits
    );
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        same_ctx(self, o);
        let bits = self.ctx.bits();
        BigComplex {
            re: Float::with_val(bits, &self.re + &o.re),
            im: Float::with_val(bits, &self.im + &o.im),
            ctx: self.ctx,
        }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        same_ctx(self, o);
        let bits = self.ctx.bits();
        BigComplex {
            re: Float::with_val(bits, &self.re - &o.re),
            im: Float::with_val(bits, &self.im - &o.im),
            ctx: self.ctx,
        }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        same_ctx(self, o);
        let bits = self.ctx.bits();
        let ac = Float::with_val(bits, &self.re * &o.re);
        let bd = Float::with_val(bits, &self.im * &o.im);
        let ad = Float::with_val(bits, &self.re * &o.im);
        let bc = Float::with_val(bits, &self.im * &o.re);
        BigComplex {
            re: ac - bd,
            im: ad + bc,
            ctx: self.ctx,
        }
    }
}

impl<'a> Div<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        self * &o.recip()
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: Float::with_val(self.ctx.bits(), -&self.re),
            im: Float::with_val(self.ctx.bits(), -&self.im),
            ctx: self.ctx,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50)
    }

    #[test]
    fn sqrt_principal() {
        let c = ctx();
        let m4 = BigComplex::from_f64(-4.0, 0.0, c).sqrt();
        assert!(m4.dist(&BigComplex::from_f64(0.0, 2.0, c)) < c.tolerance());
        let z = BigComplex::from_f64(-3.0, -4.0, c).sqrt();
        assert!(z.dist(&BigComplex::from_f64(1.0, -2.0, c)) < c.tolerance());
        assert!(z.square().dist(&BigComplex::from_f64(-3.0, -4.0, c)) < c.tolerance());
    }

    #[test]
    fn omega_cubed() {
        let c = ctx();
        let w = BigComplex::omega(c);
        assert!(w.powi(3).dist(&BigComplex::one(c)) < c.tolerance());
        assert!(w.dist(&BigComplex::exp_i_pi(2, 3, c)) < c.tolerance());
    }

    #[test]
    fn exp_log_roundtrip() {
        let c = ctx();
        let z = BigComplex::from_f64(0.3, -1.7, c);
        assert!(z.ln().exp().dist(&z) < c.tolerance());
        assert!(z.pow_ratio(1, 3).powi(3).dist(&z) < c.tolerance());
    }

    #[test]
    #[should_panic(expected = "mixed precision")]
    fn mixing_contexts_panics() {
        let _ = &BigComplex::one(ctx()) + &BigComplex::one(PrecisionContext::new(60));
    }
}
