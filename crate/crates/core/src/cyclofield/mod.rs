//! Exact arithmetic in K = Q(w), w = (-1 + sqrt(-3))/2.
//!
//! Elements are stored as a + b*w with rational a, b. Lattices, ideals of
//! the orders Z[f*w] and the ring class groups built on top of them live in
//! the submodules.

mod classgroup;
mod lattice;

pub use classgroup::{
    chi3_class, class_reps, ideal_act, ideal_for_class, trace_subgroup_reps, ClassGroup,
    ClassRep, CubeRootOfUnity, OrderIdeal,
};
pub use lattice::{conductor_of_lattice, Lattice};
pub use classgroup::{check_prime_4_7, is_prime};

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element a + b*w of K.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloNumber {
    a: Rational,
    b: Rational,
}

impl CycloNumber {
    pub fn new(a: impl Into<Rational>, b: impl Into<Rational>) -> Self {
        CycloNumber {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(a, b)
    }

    /// (a + b*w) / d
    pub fn from_ratio(a: i64, b: i64, d: i64) -> Self {
        Self::new(Rational::from((a, d)), Rational::from((b, d)))
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    pub fn omega2() -> Self {
        Self::new(-1, -1)
    }

    /// 1 + 2w, a square root of -3.
    pub fn sqrt_minus3() -> Self {
        Self::new(1, 2)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.cmp0().is_eq() && self.b.cmp0().is_eq()
    }

    pub fn is_rational(&self) -> bool {
        self.b.cmp0().is_eq()
    }

    pub fn is_integral(&self) -> bool {
        *self.a.denom() == 1 && *self.b.denom() == 1
    }

    /// a^2 - ab + b^2
    pub fn norm(&self) -> Rational {
        let aa = Rational::from(&self.a * &self.a);
        let ab = Rational::from(&self.a * &self.b);
        let bb = Rational::from(&self.b * &self.b);
        aa - ab + bb
    }

    /// a + b*conj(w) = (a - b) - b*w
    pub fn conjugate(&self) -> Self {
        CycloNumber {
            a: Rational::from(&self.a - &self.b),
            b: Rational::from(-&self.b),
        }
    }

    /// 2a - b
    pub fn trace(&self) -> Rational {
        Rational::from(&self.a * 2u32) - &self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero in K".into()));
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(CycloNumber {
            a: c.a / &n,
            b: c.b / &n,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Real part of the complex embedding, a - b/2.
    pub fn re(&self) -> Rational {
        &self.a - Rational::from(&self.b / 2u32)
    }

    /// Imaginary part divided by sqrt(3)/2, i.e. b.
    pub fn im_scaled(&self) -> &Rational {
        &self.b
    }

    /// Least common denominator of both coordinates.
    pub fn denominator(&self) -> Integer {
        self.a.denom().clone().lcm(self.b.denom())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNumber {
            a: Rational::from(&self.a * r),
            b: Rational::from(&self.b * r),
        }
    }

    /// Integer coordinates, if both are integral.
    pub fn to_integer_pair(&self) -> Option<(Integer, Integer)> {
        if self.is_integral() {
            Some((self.a.numer().clone(), self.b.numer().clone()))
        } else {
            None
        }
    }
}

impl From<i64> for CycloNumber {
    fn from(a: i64) -> Self {
        Self::new(a, 0)
    }
}

impl From<Rational> for CycloNumber {
    fn from(a: Rational) -> Self {
        Self::new(a, 0)
    }
}

impl From<Integer> for CycloNumber {
    fn from(a: Integer) -> Self {
        Self::new(a, 0)
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, o: &CycloNumber) -> CycloNumber {
        CycloNumber {
            a: Rational::from(&self.a + &o.a),
            b: Rational::from(&self.b + &o.b),
        }
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, o: &CycloNumber) -> CycloNumber {
        CycloNumber {
            a: Rational::from(&self.a - &o.a),
            b: Rational::from(&self.b - &o.b),
        }
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w, using w^2 = -1 - w
    fn mul(self, o: &CycloNumber) -> CycloNumber {
        let ac = Rational::from(&self.a * &o.a);
        let bd = Rational::from(&self.b * &o.b);
        let ad = Rational::from(&self.a * &o.b);
        let bc = Rational::from(&self.b * &o.a);
        CycloNumber {
            a: Rational::from(&ac - &bd),
            b: ad + bc - bd,
        }
    }
}

impl<'a> Div<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    /// Panics on division by zero; use [`CycloNumber::checked_div`] otherwise.
    fn div(self, o: &CycloNumber) -> CycloNumber {
        self.checked_div(o).expect("division by zero in K")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, o: CycloNumber) -> CycloNumber {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, o: &CycloNumber) -> CycloNumber {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<CycloNumber> for &'a CycloNumber {
            type Output = CycloNumber;
            fn $m(self, o: CycloNumber) -> CycloNumber {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, o: &CycloNumber) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, o: &CycloNumber) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl MulAssign<&CycloNumber> for CycloNumber {
    fn mul_assign(&mut self, o: &CycloNumber) {
        *self = &*self * o;
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -(self.clone())
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b_zero = self.b.cmp0().is_eq();
        let a_zero = self.a.cmp0().is_eq();
        if b_zero {
            return write!(f, "{}", self.a);
        }
        let coeff = |b: &Rational| -> String {
            if *b == 1 {
                String::new()
            } else if *b == -1 {
                "-".to_string()
            } else {
                b.to_string()
            }
        };
        if a_zero {
            return write!(f, "{}w", coeff(&self.b));
        }
        if self.b.cmp0().is_lt() {
            let nb = Rational::from(-&self.b);
            write!(f, "{}-{}w", self.a, coeff(&nb))
        } else {
            write!(f, "{}+{}w", self.a, coeff(&self.b))
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    s.parse::<Rational>()
        .map_err(|_| Error::invalid(format!("bad rational literal {s:?}")))
}

impl FromStr for CycloNumber {
    type Err = Error;

    /// Accepts "a", "bw", "a+bw", "a-bw" with rational a, b ("3/4", "-2").
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::invalid("empty element of K"));
        }
        let Some(body) = s.strip_suffix('w') else {
            return Ok(CycloNumber::new(parse_rational(&s)?, 0));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let b = match b_str {
            "" | "+" => Rational::from(1),
            "-" => Rational::from(-1),
            t => parse_rational(t)?,
        };
        Ok(CycloNumber::new(parse_rational(a_str)?, b))
    }
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Complex conjugation; the class of conjugate(a) is the inverse class of a.
pub fn conjugate(x: &CycloNumber) -> CycloNumber {
    x.conjugate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> CycloNumber {
        s.parse().unwrap()
    }

    #[test]
    fn omega_squared() {
        let w = CycloNumber::omega();
        assert_eq!(&w * &w, CycloNumber::omega2());
        assert_eq!(w.pow(3), CycloNumber::one());
        assert_eq!(CycloNumber::sqrt_minus3().pow(2), CycloNumber::from(-3));
    }

    #[test]
    fn conjugation() {
        assert_eq!(conjugate(&CycloNumber::omega()), CycloNumber::omega2());
        // 1 + 21w -> 1 + 21w^2 = -20 - 21w
        assert_eq!(conjugate(&k("1+21w")), k("-20-21w"));
    }

    #[test]
    fn norms() {
        assert_eq!(k("1+3w").norm(), 7);
        assert_eq!(k("2-w").norm(), 7);
        assert_eq!(CycloNumber::zero().norm(), 0);
    }

    #[test]
    fn display_roundtrip() {
        for s in ["-4/7+1/7w", "w", "-w", "3", "0", "2/3-5w", "7/9w", "1+w"] {
            let x = k(s);
            assert_eq!(x.to_string(), s);
            assert_eq!(k(&x.to_string()), x);
        }
        assert_eq!(k("1/2 + 3/4 w"), CycloNumber::new(Rational::from((1, 2)), Rational::from((3, 4))));
        assert!("1/0".parse::<CycloNumber>().is_err());
        assert!("".parse::<CycloNumber>().is_err());
    }

    #[test]
    fn inverse() {
        let x = k("3/2-7w");
        assert_eq!(&x * &x.inverse().unwrap(), CycloNumber::one());
        assert!(CycloNumber::zero().inverse().is_err());
    }
}
