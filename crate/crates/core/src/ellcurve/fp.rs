use std::collections::BTreeSet;

use rug::{Integer, Rational};

use super::{CurveModel, CurvePoint};
use crate::cyclofield::{is_prime, CycloNumber};
use crate::error::{Error, Result};

fn pow_mod(b: u64, e: u64, p: u64) -> u64 {
    Integer::from(b).pow_mod(&Integer::from(e), &Integer::from(p)).unwrap().to_u64().unwrap()
}

fn check_one_mod_three(p: u64) -> Result<()> {
    if !is_prime(p) || p % 3 != 1 {
        return Err(Error::invalid(format!("{p} is not a prime congruent to 1 mod 3")));
    }
    Ok(())
}

/// Whether 3 is a cube modulo p, i.e. 3^((p-1)/3) = 1 mod p.
pub fn is_three_cube(p: u64) -> Result<bool> {
    check_one_mod_three(p)?;
    Ok(pow_mod(3, (p - 1) / 3, p) == 1)
}

/// The smallest primitive cube root of unity mod p.
pub fn primitive_cube_root(p: u64) -> Result<u64> {
    check_one_mod_three(p)?;
    Ok((2..p).find(|&u| pow_mod(u, 3, p) == 1).expect("p = 1 mod 3 has cube roots of unity"))
}

/// y^2 + y = 3x^3 - 1 over F_p, together with the two reductions K -> F_p
/// (w -> u and w -> u^2) at the primes above p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpCurve {
    pub p: u64,
    pub model: CurveModel,
    /// The image of w under the first reduction; None when p is inert in K.
    pub u: Option<u64>,
}

impl FpCurve {
    /// The curve has bad reduction only at 3.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p == 3 {
            return Err(Error::invalid(format!("no good reduction of y^2 + y = 3x^3 - 1 at {p}")));
        }
        let u = if p % 3 == 1 { Some(primitive_cube_root(p)?) } else { None };
        Ok(FpCurve { p, model: CurveModel::EtaModel(1), u })
    }

    pub fn contains(&self, x: u64, y: u64) -> bool {
        let p = self.p as u128;
        let (x, y) = (x as u128 % p, y as u128 % p);
        (y * y + y) % p == (3 * x % p * x % p * x + p - 1) % p
    }

    /// Number of projective points.
    pub fn count_points(&self) -> u64 {
        let mut n = 1;
        for x in 0..self.p {
            for y in 0..self.p {
                if self.contains(x, y) {
                    n += 1;
                }
            }
        }
        n
    }

    fn reduce_rational(&self, r: &Rational) -> Result<u64> {
        let p = Integer::from(self.p);
        let inv = r
            .denom()
            .clone()
            .invert(&p)
            .map_err(|_| Error::Domain(format!("{r} is not integral at {}", self.p)))?;
        let v = (r.numer() * inv) % &p;
        Ok(if v < 0 { v + &p } else { v }.to_u64().unwrap())
    }

    /// (z mod P, z mod conj(P)) for the primes P = (p, w - u) and conj(P) = (p, w - u^2).
    pub fn reduce_pair(&self, z: &CycloNumber) -> Result<(u64, u64)> {
        let u = self.u.ok_or_else(|| Error::Unsupported(format!("{} is inert in K", self.p)))?;
        let a = self.reduce_rational(z.a())?;
        let b = self.reduce_rational(z.b())?;
        let p = self.p as u128;
        let at = |w: u64| ((a as u128 + b as u128 * w as u128) % p) as u64;
        Ok((at(u), at(pow_mod(u, 2, self.p))))
    }

    /// The x-coordinate of an affine K-point under both reductions.
    pub fn reduce_x(&self, pt: &CurvePoint<CycloNumber>) -> Result<Option<(u64, u64)>> {
        if pt.model != self.model {
            return Err(Error::invalid(format!("point is on {}, not {}", pt.model, self.model)));
        }
        pt.x().map(|x| self.reduce_pair(x)).transpose()
    }
}

/// The pairs (x mod P, x mod conj(P)) over the affine 3-torsion points of
/// y^2 + y = 3x^3 - 1: {(0,0), (1,1), (u,u^2), (u^2,u)}.
pub fn e1_3torsion_shapes(p: u64) -> Result<BTreeSet<(u64, u64)>> {
    check_one_mod_three(p)?;
    let fp = FpCurve::new(p)?;
    let torsion = super::torsion_list(CurveModel::EtaModel(1), super::TorsionField::K)?;
    let mut out = BTreeSet::new();
    for t in &torsion {
        if let Some(pair) = fp.reduce_x(t)? {
            out.insert(pair);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubes_mod_small_primes() {
        // brute force: 3 is a cube mod p iff some c has c^3 = 3
        for p in [7u64, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97, 103, 139, 151, 157, 193] {
            let brute = (1..p).any(|c| c * c % p * c % p == 3 % p);
            assert_eq!(is_three_cube(p).unwrap(), brute, "p={p}");
        }
        assert!(!is_three_cube(7).unwrap());
        assert!(is_three_cube(61).unwrap());
        assert!(is_three_cube(11).is_err());
    }

    #[test]
    fn cube_roots_of_unity() {
        assert_eq!(primitive_cube_root(7).unwrap(), 2);
        assert_eq!(primitive_cube_root(13).unwrap(), 3);
    }

    #[test]
    fn shapes_for_seven() {
        let s = e1_3torsion_shapes(7).unwrap();
        assert_eq!(s, BTreeSet::from([(0, 0), (1, 1), (2, 4), (4, 2)]));
        assert!(!s.contains(&(2, 1)) && !s.contains(&(1, 2)));
    }

    #[test]
    fn point_counts_agree_with_torsion() {
        // E1[3] is defined over F_p for p = 1 mod 3, so 9 divides the count
        for p in [7u64, 13, 19, 31] {
            let c = FpCurve::new(p).unwrap().count_points();
            assert_eq!(c % 9, 0, "p={p}");
            assert!((c as f64 - p as f64 - 1.0).abs() <= 2.0 * (p as f64).sqrt());
        }
        assert!(FpCurve::new(3).is_err());
    }
}
