//! Exact q-expansions of eta quotients.
//!
//! Exponents are stored multiplied by 24, so q^(1/24)-shifted series such as
//! eta itself are indexed by integers. A [`QSeries`] holds the terms
//! q^((val24 + 24k)/24) for k = 0, 1, ... below its truncation order.

mod eta_quotient;
mod identity;

pub use eta_quotient::{ligozat_check, EtaQuotient, LigozatReport};
pub use identity::{verify_weierstrass_identity, x_quotient, xy_series, IdentityCheck, STURM_BOUND};

use std::fmt::Write as _;

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Truncated Laurent series in q^(1/24) supported on one residue class mod 24.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    val24: i64,
    coeffs: Vec<Rational>,
    order24: i64,
}

fn n_terms(val24: i64, order24: i64) -> usize {
    if order24 <= val24 {
        0
    } else {
        ((order24 - val24 + 23) / 24) as usize
    }
}

/// ceil(24 * order)
pub(crate) fn order_to_24(order: &Rational) -> i64 {
    let r = Rational::from(order * 24u32).ceil();
    r.numer().to_i64().expect("truncation order fits in i64")
}

impl QSeries {
    /// Build from a start exponent (times 24), coefficients and a truncation order (times 24).
    pub fn from_parts(val24: i64, mut coeffs: Vec<Rational>, order24: i64) -> Self {
        coeffs.resize(n_terms(val24, order24), Rational::new());
        QSeries { val24, coeffs, order24 }
    }

    /// The constant c, known up to q^order.
    pub fn constant(c: impl Into<Rational>, order24: i64) -> Self {
        QSeries::from_parts(0, vec![c.into()], order24)
    }

    /// Start exponent times 24 (the valuation unless leading terms cancelled).
    pub fn val24(&self) -> i64 {
        self.val24
    }

    pub fn order24(&self) -> i64 {
        self.order24
    }

    /// Exponent of the lowest nonzero term, or None for the zero series.
    pub fn valuation(&self) -> Option<Rational> {
        self.coeffs
            .iter()
            .position(|c| *c != 0)
            .map(|k| Rational::from((self.val24 + 24 * k as i64, 24)))
    }

    pub fn truncation_order(&self) -> Rational {
        Rational::from((self.order24, 24))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of q^(e24/24); zero off the support class. Panics beyond the truncation order.
    pub fn coeff(&self, e24: i64) -> Rational {
        assert!(e24 < self.order24, "coefficient beyond truncation order");
        if e24 < self.val24 || (e24 - self.val24) % 24 != 0 {
            return Rational::new();
        }
        self.coeffs[((e24 - self.val24) / 24) as usize].clone()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.iter().find(|c| **c != 0)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// Largest |coefficient| over the known range.
    pub fn max_abs(&self) -> Rational {
        self.coeffs
            .iter()
            .map(|c| Rational::from(c.abs_ref()))
            .max()
            .unwrap_or_default()
    }

    /// Drop leading zero coefficients so that val24 is the true valuation.
    pub fn normalized(mut self) -> Self {
        let k = self.coeffs.iter().position(|c| *c != 0).unwrap_or(self.coeffs.len());
        self.coeffs.drain(..k);
        self.val24 += 24 * k as i64;
        if self.coeffs.is_empty() {
            self.val24 = self.order24;
        }
        self
    }

    /// Truncate to a smaller order.
    pub fn truncate(&self, order24: i64) -> Self {
        let order24 = order24.min(self.order24);
        let mut c = self.coeffs.clone();
        c.truncate(n_terms(self.val24, order24));
        QSeries::from_parts(self.val24, c, order24)
    }

    fn check_class(&self, other: &Self) -> Result<()> {
        if (self.val24 - other.val24).rem_euclid(24) != 0 {
            return Err(Error::invalid(format!(
                "series supported on different classes mod 1 ({}/24 vs {}/24)",
                self.val24, other.val24
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| *a += b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| *a -= b)
    }

    fn combine(&self, other: &Self, op: impl Fn(&mut Rational, &Rational)) -> Result<Self> {
        self.check_class(other)?;
        let val24 = self.val24.min(other.val24);
        let order24 = self.order24.min(other.order24);
        let mut out = QSeries::from_parts(val24, Vec::new(), order24);
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let e = val24 + 24 * i as i64;
            if e >= self.val24 {
                *c += self.coeffs[((e - self.val24) / 24) as usize].clone();
            }
            if e >= other.val24 {
                op(c, &other.coeffs[((e - other.val24) / 24) as usize]);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries {
            val24: self.val24,
            coeffs: self.coeffs.iter().map(|x| Rational::from(x * c)).collect(),
            order24: self.order24,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let val24 = self.val24 + other.val24;
        let order24 = (self.val24 + other.order24).min(other.val24 + self.order24);
        let n = n_terms(val24, order24);
        let mut coeffs = vec![Rational::new(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if *b != 0 {
                    coeffs[i + j] += Rational::from(a * b);
                }
            }
        }
        QSeries { val24, coeffs, order24 }
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let s = self.clone().normalized();
        if s.coeffs.is_empty() {
            return Err(Error::Division("series is zero to its truncation order".into()));
        }
        let n = s.coeffs.len();
        let lead_inv = Rational::from(s.coeffs[0].recip_ref());
        let mut inv = vec![Rational::new(); n];
        inv[0] = lead_inv.clone();
        for k in 1..n {
            let mut acc = Rational::new();
            for j in 1..=k {
                if s.coeffs[j] != 0 {
                    acc += Rational::from(&s.coeffs[j] * &inv[k - j]);
                }
            }
            inv[k] = -acc * &lead_inv;
        }
        Ok(QSeries {
            val24: -s.val24,
            coeffs: inv,
            order24: s.order24 - 2 * s.val24,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        if e == 0 {
            return Ok(QSeries::constant(1, base.order24 - base.val24));
        }
        let mut acc = base.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// One line per stored coefficient: "exponent_numerator/24<TAB>coefficient".
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(s, "{}/24\t{}", self.val24 + 24 * k as i64, c);
        }
        s
    }
}

/// Power-series part of prod_{n>=1} (1 - q^(d n))^r as integers, to q^(len-1).
pub(crate) fn eta_product_integers(factors: &[(u64, i64)], len: usize) -> Vec<Integer> {
    let mut c = vec![Integer::new(); len];
    if len == 0 {
        return c;
    }
    c[0] = Integer::from(1);
    for &(d, r) in factors {
        let d = d as usize;
        let mut m = d;
        while m < len {
            for _ in 0..r.unsigned_abs() {
                if r > 0 {
                    // multiply by (1 - q^m)
                    for k in (m..len).rev() {
                        let t = c[k - m].clone();
                        c[k] -= t;
                    }
                } else {
                    // divide by (1 - q^m)
                    for k in m..len {
                        let t = c[k - m].clone();
                        c[k] += t;
                    }
                }
            }
            m += d;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn inverse_of_one_minus_q() {
        let s = QSeries::from_parts(0, vec![r(1), r(-1)], 24 * 10);
        let inv = s.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == 1));
        let one = s.mul(&inv);
        assert_eq!(one.coeff(0), 1);
        assert!(one.coeffs()[1..].iter().all(|c| *c == 0));
    }

    #[test]
    fn zero_series_not_invertible() {
        let s = QSeries::from_parts(0, vec![], 48);
        assert!(matches!(s.inverse(), Err(Error::Division(_))));
    }

    #[test]
    fn addition_requires_matching_class() {
        let a = QSeries::from_parts(1, vec![r(1)], 100);
        let b = QSeries::from_parts(0, vec![r(1)], 100);
        assert!(a.add(&b).is_err());
        let c = QSeries::from_parts(25, vec![r(2)], 100);
        let s = a.add(&c).unwrap();
        assert_eq!(s.coeff(1), 1);
        assert_eq!(s.coeff(25), 2);
    }

    #[test]
    fn pentagonal_numbers() {
        let c = eta_product_integers(&[(1, 1)], 30);
        let expect: Vec<i64> = vec![
            1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0,
            0, 0,
        ];
        assert_eq!(c, expect.into_iter().map(Integer::from).collect::<Vec<_>>());
    }

    #[test]
    fn partition_numbers() {
        let c = eta_product_integers(&[(1, -1)], 12);
        let p = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56];
        for (a, b) in c.iter().zip(p) {
            assert_eq!(*a, b);
        }
    }

    #[test]
    fn dump_format() {
        let s = QSeries::from_parts(-48, vec![r(1), Rational::from((1, 2))], -48 + 48);
        assert_eq!(s.dump(), "-48/24\t1\n-24/24\t1/2\n");
    }

    #[test]
    fn order_rounding() {
        assert_eq!(order_to_24(&Rational::from((1, 48))), 1);
        assert_eq!(order_to_24(&Rational::from(2)), 48);
    }
}
