//! Matrices acting on the upper half plane, points of X0(N) given by CM
//! lattices, and the modular automorphisms of X0(243).

mod maut;
mod normalize;

pub use maut::{
    automorphism_search, automorphism_search_all, candidate_words, induced_e9_action, maut_group,
    s3_elements, same_coset, AffineE9Map, Letter, MautReport, ModWord,
};
pub use normalize::{isogeny_multiplier, normalize_isogeny, NormalizedIsogeny};

use std::fmt;
use std::ops::Mul;

use rug::{Integer, Rational};
use serde::{Serialize, Serializer};

use crate::cyclofield::CycloNumber;
use crate::error::{Error, Result};
use crate::Case;

/// The level of the modular curve carrying the parametrization.
pub const LEVEL: i128 = 243;

/// A 2x2 integer matrix acting by Mobius transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl ProjMatrix {
    pub const fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        ProjMatrix { a, b, c, d }
    }

    pub const fn identity() -> Self {
        ProjMatrix::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> i128 {
        self.a * self.d - self.b * self.c
    }

    /// Entries divided by their (positive) gcd.
    pub fn canonical(&self) -> Self {
        let g = gcd(gcd(self.a, self.b), gcd(self.c, self.d));
        if g <= 1 {
            return *self;
        }
        ProjMatrix::new(self.a / g, self.b / g, self.c / g, self.d / g)
    }

    /// det * inverse
    pub fn adj(&self) -> Self {
        ProjMatrix::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(ProjMatrix::identity(), |acc, _| (acc * *self).canonical())
    }

    pub fn in_gamma0(&self, n: i128) -> bool {
        self.det() == 1 && self.c % n == 0
    }

    /// (a tau + b) / (c tau + d)
    pub fn act(&self, tau: &CycloNumber) -> Result<CycloNumber> {
        let num = &(tau * &CycloNumber::from(Integer::from(self.a))) + &CycloNumber::from(Integer::from(self.b));
        let den = &(tau * &CycloNumber::from(Integer::from(self.c))) + &CycloNumber::from(Integer::from(self.d));
        num.checked_div(&den)
    }

    /// Image of a rational cusp (None = infinity).
    pub fn act_cusp(&self, s: Option<&Rational>) -> Option<Rational> {
        let (num, den) = match s {
            None => (Rational::from(self.a), Rational::from(self.c)),
            Some(s) => (
                Rational::from(s * self.a) + self.b,
                Rational::from(s * self.c) + self.d,
            ),
        };
        if den == 0 {
            None
        } else {
            Some(num / den)
        }
    }
}

impl Mul for ProjMatrix {
    type Output = ProjMatrix;
    fn mul(self, o: ProjMatrix) -> ProjMatrix {
        ProjMatrix::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for ProjMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The matrix M with tau = M(w p/9) for the base isogeny of each case.
pub fn base_matrix(case: Case) -> ProjMatrix {
    match case {
        Case::One => ProjMatrix::new(2, -1, 9, -4),
        Case::Two => ProjMatrix::new(1, 0, -9, 1),
    }
}

const S: ProjMatrix = ProjMatrix::new(0, -1, 1, 0);

/// Reduce tau into the standard fundamental domain of SL2(Z):
/// returns (tau', g) with g in SL2(Z), g(tau) = tau',
/// |Re tau'| <= 1/2, |tau'| >= 1, and Re tau' <= 0 when |tau'| = 1.
pub fn reduce_sl2(tau: &CycloNumber) -> Result<(CycloNumber, ProjMatrix)> {
    if tau.b().cmp0().is_le() {
        return Err(Error::Domain(format!("{tau} is not in the upper half plane")));
    }
    let mut t = tau.clone();
    let mut g = ProjMatrix::identity();
    let half = Rational::from((1, 2));
    loop {
        let n = (t.re() + &half).floor();
        if n != 0 {
            let n_i = n.numer().to_i128().ok_or_else(|| Error::invalid("translation overflow"))?;
            t = &t - &CycloNumber::from(n);
            g = ProjMatrix::new(1, -n_i, 0, 1) * g;
        }
        let norm = t.norm();
        if norm < 1 || (norm == 1 && t.re().cmp0().is_gt()) {
            t = &CycloNumber::from(-1) / &t;
            g = S * g;
            continue;
        }
        return Ok((t, g));
    }
}

/// Elements of SL2(Z) that can fix a point of the fundamental domain.
const STABILIZER_CANDIDATES: [ProjMatrix; 7] = [
    ProjMatrix::new(1, 0, 0, 1),
    ProjMatrix::new(0, -1, 1, 0),
    ProjMatrix::new(0, -1, 1, 1),
    ProjMatrix::new(1, 1, -1, 0),
    ProjMatrix::new(1, -1, 1, 0),
    ProjMatrix::new(0, 1, -1, 1),
    ProjMatrix::new(1, 1, 0, 1),
];

/// A gamma in Gamma0(n) with gamma(tau1) = tau2, if one exists.
pub fn gamma0_equivalent(tau1: &CycloNumber, tau2: &CycloNumber, n: i128) -> Option<ProjMatrix> {
    let (r1, g1) = reduce_sl2(tau1).ok()?;
    let (r2, g2) = reduce_sl2(tau2).ok()?;
    if r1 != r2 {
        return None;
    }
    for s in STABILIZER_CANDIDATES {
        if s.act(&r1).ok().as_ref() != Some(&r1) {
            continue;
        }
        let w = g2.adj() * s * g1;
        if w.c % n == 0 {
            if w.a < 0 || (w.a == 0 && w.b < 0) {
                return Some(ProjMatrix::new(-w.a, -w.b, -w.c, -w.d));
            }
            return Some(w);
        }
    }
    None
}
