use std::fmt;

use rug::{Integer, Rational};
use serde::{Serialize, Serializer};

use super::CycloNumber;
use crate::error::{Error, Result};

/// A rank-2 Z-module in K, kept in canonical Hermite form:
/// basis v1 = (x1 + y1*w)/den, v2 = y2*w/den with x1, y2 > 0, 0 <= y1 < y2
/// and den minimal. Two lattices are equal iff their canonical forms are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    den: Integer,
    x1: Integer,
    y1: Integer,
    y2: Integer,
}

/// Hermite normal form of the row span of integer 2-vectors:
/// returns (x1, y1, y2) with rows (x1, y1), (0, y2).
pub(crate) fn hnf2(rows: &[[Integer; 2]]) -> Result<(Integer, Integer, Integer)> {
    let mut rows: Vec<[Integer; 2]> = rows.to_vec();
    // Euclid on the first column.
    loop {
        let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][0] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        nz.sort_by(|&i, &j| rows[i][0].cmp_abs(&rows[j][0]));
        let piv = rows[nz[0]].clone();
        for &i in &nz[1..] {
            let (q, _) = rows[i][0].clone().div_rem_floor(piv[0].clone());
            rows[i][0] -= Integer::from(&q * &piv[0]);
            rows[i][1] -= Integer::from(&q * &piv[1]);
        }
    }
    let piv_idx = rows
        .iter()
        .position(|r| r[0] != 0)
        .ok_or_else(|| Error::Structure("degenerate lattice (rank < 2)".into()))?;
    let mut piv = rows[piv_idx].clone();
    if piv[0] < 0 {
        piv[0] = Integer::from(-&piv[0]);
        piv[1] = Integer::from(-&piv[1]);
    }
    let mut c = Integer::new();
    for (i, r) in rows.iter().enumerate() {
        if i != piv_idx {
            c.gcd_mut(&r[1]);
        }
    }
    if c == 0 {
        return Err(Error::Structure("degenerate lattice (rank < 2)".into()));
    }
    let (_, y1) = piv[1].clone().div_rem_euc(c.clone());
    Ok((piv[0].clone(), y1, c))
}

impl Lattice {
    /// The Z-span of the given generators.
    pub fn new(gens: &[CycloNumber]) -> Result<Self> {
        let mut den = Integer::from(1);
        for g in gens {
            den.lcm_mut(g.a().denom());
            den.lcm_mut(g.b().denom());
        }
        let rows: Vec<[Integer; 2]> = gens
            .iter()
            .map(|g| {
                [
                    (g.a().numer() * Integer::from(&den / g.a().denom())),
                    (g.b().numer() * Integer::from(&den / g.b().denom())),
                ]
            })
            .collect();
        let (x1, y1, y2) = hnf2(&rows)?;
        let mut g = den.clone();
        g.gcd_mut(&x1);
        g.gcd_mut(&y1);
        g.gcd_mut(&y2);
        Ok(Lattice {
            den: den / &g,
            x1: x1 / &g,
            y1: y1 / &g,
            y2: y2 / &g,
        })
    }

    /// <1, tau>
    pub fn from_tau(tau: &CycloNumber) -> Result<Self> {
        if tau.is_rational() {
            return Err(Error::invalid(format!("{tau} is real; <1, tau> is not a lattice")));
        }
        Lattice::new(&[CycloNumber::one(), tau.clone()])
    }

    /// The maximal order Z[w].
    pub fn maximal_order() -> Self {
        Lattice::new(&[CycloNumber::one(), CycloNumber::omega()]).expect("Z[w] is a lattice")
    }

    /// The order Z[f*w].
    pub fn order(f: u64) -> Self {
        Lattice::new(&[CycloNumber::one(), CycloNumber::from_ints(0, f as i64)])
            .expect("Z[fw] is a lattice")
    }

    pub fn basis(&self) -> [CycloNumber; 2] {
        [
            CycloNumber::new(
                Rational::from((self.x1.clone(), self.den.clone())),
                Rational::from((self.y1.clone(), self.den.clone())),
            ),
            CycloNumber::new(0, Rational::from((self.y2.clone(), self.den.clone()))),
        ]
    }

    /// v2 / v1, which lies in the upper half plane by construction.
    pub fn tau(&self) -> CycloNumber {
        let [v1, v2] = self.basis();
        &v2 / &v1
    }

    /// Coordinates (m, n) with x = m*v1 + n*v2.
    pub fn coords(&self, x: &CycloNumber) -> (Rational, Rational) {
        // v1 = (x1 + y1 w)/den, v2 = y2 w/den
        let m = Rational::from(x.a() * &self.den) / &self.x1;
        let rest = Rational::from(x.b() * &self.den) - Rational::from(&m * &self.y1);
        let n = rest / &self.y2;
        (m, n)
    }

    pub fn contains(&self, x: &CycloNumber) -> bool {
        let (m, n) = self.coords(x);
        *m.denom() == 1 && *n.denom() == 1
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Covolume relative to the basis (1, w), i.e. |det| of the coordinate matrix.
    pub fn covolume(&self) -> Rational {
        Rational::from((Integer::from(&self.x1 * &self.y2), Integer::from(self.den.square_ref())))
    }

    /// [self : sub] for a sublattice.
    pub fn index_of(&self, sub: &Lattice) -> Result<Integer> {
        if !self.contains_lattice(sub) {
            return Err(Error::invalid("index of a non-sublattice"));
        }
        let r = sub.covolume() / self.covolume();
        Ok(r.numer().clone())
    }

    pub fn scale(&self, lambda: &CycloNumber) -> Result<Lattice> {
        if lambda.is_zero() {
            return Err(Error::invalid("scaling a lattice by zero"));
        }
        let [v1, v2] = self.basis();
        Lattice::new(&[lambda * &v1, lambda * &v2])
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let [a, b] = self.basis();
        let [c, d] = other.basis();
        Lattice::new(&[a, b, c, d]).expect("sum of lattices has rank 2")
    }

    /// Dual lattice with respect to the standard pairing on (1, w)-coordinates.
    fn dual(&self) -> Lattice {
        let [v1, v2] = self.basis();
        let (a, b, c, d) = (v1.a().clone(), v1.b().clone(), v2.a().clone(), v2.b().clone());
        let det = Rational::from(&a * &d) - Rational::from(&b * &c);
        // rows of (B^{-1})^T
        let r1 = CycloNumber::new(Rational::from(&d / &det), Rational::from(-&c) / &det);
        let r2 = CycloNumber::new(Rational::from(-&b) / &det, Rational::from(&a / &det));
        Lattice::new(&[r1, r2]).expect("dual of a lattice has rank 2")
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        self.dual().sum(&other.dual()).dual()
    }

    /// Product module: Z-span of all products of basis elements.
    pub fn mul(&self, other: &Lattice) -> Lattice {
        let a = self.basis();
        let b = other.basis();
        let gens: Vec<CycloNumber> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        Lattice::new(&gens).expect("product of lattices has rank 2")
    }

    pub fn conjugate(&self) -> Lattice {
        let [v1, v2] = self.basis();
        Lattice::new(&[v1.conjugate(), v2.conjugate()]).expect("conjugate lattice")
    }

    /// Canonical integer data (den, x1, y1, y2).
    pub fn hnf(&self) -> (&Integer, &Integer, &Integer, &Integer) {
        (&self.den, &self.x1, &self.y1, &self.y2)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [v1, v2] = self.basis();
        write!(f, "<{v1}, {v2}>")
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [v1, v2] = self.basis();
        [v1.to_string(), v2.to_string()].serialize(s)
    }
}

/// Conductor f of the multiplier ring {a in K : aL in L} = Z[f*w].
pub fn conductor_of_lattice(l: &Lattice) -> u64 {
    let tau = l.tau();
    // tau^2 - tr*tau + n = 0, cleared to a primitive integer form A x^2 + B x + C
    let tr = tau.trace();
    let n = tau.norm();
    let den = tr.denom().clone().lcm(n.denom());
    let a = den.clone();
    let b = Integer::from(-Rational::from(&tr * &den).numer());
    let c = Rational::from(&n * &den).numer().clone();
    let mut g = a.clone();
    g.gcd_mut(&b);
    g.gcd_mut(&c);
    let (a, b, c) = (a / &g, b / &g, c / &g);
    let disc = Integer::from(b.square_ref()) - Integer::from(4) * a * c;
    let f2 = (-disc) / 3u32;
    let f = f2.clone().sqrt();
    debug_assert_eq!(Integer::from(f.square_ref()), f2);
    f.to_u64().expect("conductor fits in u64")
}
