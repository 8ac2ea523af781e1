use std::fmt::Debug;

use rug::{Float, Rational};

use crate::cyclofield::CycloNumber;
use crate::error::{Error, Result};
use crate::etaeval::BigComplex;

/// Coordinate fields for curve points: Q, K = Q(w) exactly, and C to working precision.
pub trait CurveField: Clone + Debug + PartialEq {
    /// Whether equality and zero tests are exact.
    const EXACT: bool;

    /// A rational constant in the same field (and precision) as `self`.
    fn lift(&self, r: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// The fixed primitive cube root of unity w, if the field contains it.
    fn omega(&self) -> Result<Self>;

    fn lift_i64(&self, v: i64) -> Self {
        self.lift(&Rational::from(v))
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn cube(&self) -> Self {
        self.mul(&self.square())
    }

    fn same(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl CurveField for Rational {
    const EXACT: bool = true;

    fn lift(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.cmp0().is_eq() {
            return Err(Error::Domain("division by zero in Q".into()));
        }
        Ok(Rational::from(self / o))
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn is_zero(&self) -> bool {
        self.cmp0().is_eq()
    }
    fn omega(&self) -> Result<Self> {
        Err(Error::Field("w is not rational".into()))
    }
}

impl CurveField for CycloNumber {
    const EXACT: bool = true;

    fn lift(&self, r: &Rational) -> Self {
        CycloNumber::from(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        CycloNumber::is_zero(self)
    }
    fn omega(&self) -> Result<Self> {
        Ok(CycloNumber::omega())
    }
}

impl CurveField for BigComplex {
    const EXACT: bool = false;

    fn lift(&self, r: &Rational) -> Self {
        BigComplex::from_rational(r, self.ctx())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.abs().is_zero() {
            return Err(Error::Domain("division by zero in C".into()));
        }
        Ok(self / o)
    }
    fn neg(&self) -> Self {
        -self
    }
    /// Zero to half the working digits; only used to detect P = +-Q in the group law.
    fn is_zero(&self) -> bool {
        let ctx = self.ctx();
        self.abs() < ctx.ten_pow_neg(ctx.digits as i64 / 2)
    }
    fn same(&self, o: &Self) -> bool {
        let ctx = self.ctx();
        let scale = Float::with_val(ctx.bits(), 1) + self.abs();
        self.dist(o) < ctx.ten_pow_neg(ctx.digits as i64 / 2) * scale
    }
    fn omega(&self) -> Result<Self> {
        Ok(BigComplex::omega(self.ctx()))
    }
}
