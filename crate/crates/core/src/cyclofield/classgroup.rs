//! Ring class groups (Z_K/f)^x / (Z/f)^x <±w> and ideals of Z[f*w].

use std::fmt;
use std::sync::OnceLock;

use rug::Integer;
use serde::Serialize;

use super::{conductor_of_lattice, CycloNumber, Lattice};
use crate::error::{Error, Result};

const UNITS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)];

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a.rem_euclid(b));
    }
    a.abs()
}

fn mul_mod(x: (i64, i64), y: (i64, i64), f: i64) -> (i64, i64) {
    let (a, b) = x;
    let (c, d) = y;
    (
        (a * c - b * d).rem_euclid(f),
        (a * d + b * c - b * d).rem_euclid(f),
    )
}

fn norm_i(x: (i64, i64)) -> i64 {
    x.0 * x.0 - x.0 * x.1 + x.1 * x.1
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A class representative alpha modulo f (integer coordinates, gcd(N(alpha), f) = 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassRep {
    pub alpha: CycloNumber,
    pub modulus: u64,
}

impl ClassRep {
    pub fn new(alpha: CycloNumber, modulus: u64) -> Result<Self> {
        let (a, b) = alpha
            .to_integer_pair()
            .ok_or_else(|| Error::invalid(format!("class representative {alpha} is not integral")))?;
        let n = Integer::from(&a * &a) - Integer::from(&a * &b) + Integer::from(&b * &b);
        if n.gcd(&Integer::from(modulus)) != 1 {
            return Err(Error::invalid(format!(
                "{alpha} is not invertible modulo {modulus}"
            )));
        }
        Ok(ClassRep { alpha, modulus })
    }

    fn residue(&self) -> (i64, i64) {
        residue(&self.alpha, self.modulus as i64)
    }
}

fn residue(x: &CycloNumber, f: i64) -> (i64, i64) {
    let (a, b) = x.to_integer_pair().expect("integral class representative");
    let fi = Integer::from(f);
    let (_, ra) = a.div_rem_euc(fi.clone());
    let (_, rb) = b.div_rem_euc(fi);
    (ra.to_i64().unwrap(), rb.to_i64().unwrap())
}

impl fmt::Display for ClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod {}", self.alpha, self.modulus)
    }
}

/// The group (Z_K/f)^x modulo (Z/f)^x and the units <±w>, by brute force.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    f: i64,
    reps: Vec<(i64, i64)>,
    class_of: Vec<u32>,
}

impl ClassGroup {
    pub fn new(f: u64) -> Self {
        let f = f as i64;
        if f == 1 {
            return ClassGroup {
                f,
                reps: vec![(1, 0)],
                class_of: vec![0],
            };
        }
        let units_z: Vec<i64> = (1..f).filter(|&n| gcd(n, f) == 1).collect();
        let mut class_of = vec![u32::MAX; (f * f) as usize];
        let mut reps = Vec::new();
        for a in 0..f {
            for b in 0..f {
                let idx = (a * f + b) as usize;
                if class_of[idx] != u32::MAX || gcd(norm_i((a, b)), f) != 1 {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push((a, b));
                for &u in &UNITS {
                    let au = mul_mod((a, b), u, f);
                    for &n in &units_z {
                        let (c, d) = ((au.0 * n) % f, (au.1 * n) % f);
                        class_of[(c * f + d) as usize] = id;
                    }
                }
            }
        }
        ClassGroup { f, reps, class_of }
    }

    pub fn modulus(&self) -> u64 {
        self.f as u64
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Class index of an invertible residue.
    pub fn class_of(&self, x: &CycloNumber) -> Result<usize> {
        let (a, b) = residue(x, self.f);
        let c = self.class_of[(a * self.f + b) as usize];
        if c == u32::MAX {
            return Err(Error::invalid(format!("{x} is not invertible modulo {}", self.f)));
        }
        Ok(c as usize)
    }

    pub fn rep(&self, class: usize) -> ClassRep {
        let (a, b) = self.reps[class];
        ClassRep {
            alpha: CycloNumber::from_ints(a, b),
            modulus: self.f as u64,
        }
    }

    pub fn reps(&self) -> Vec<ClassRep> {
        (0..self.order()).map(|i| self.rep(i)).collect()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let z = mul_mod(self.reps[x], self.reps[y], self.f);
        self.class_of[(z.0 * self.f + z.1) as usize] as usize
    }

    pub fn pow(&self, x: usize, e: u32) -> usize {
        (0..e).fold(self.identity(), |acc, _| self.mul(acc, x))
    }

    pub fn identity(&self) -> usize {
        if self.f == 1 {
            0
        } else {
            self.class_of[(1 % self.f * self.f) as usize] as usize
        }
    }
}

/// One representative per class of (Z_K/f)^x / (Z/f)^x <±w>.
pub fn class_reps(f: u64) -> Vec<ClassRep> {
    ClassGroup::new(f).reps()
}

/// A cube root of unity w^k, recorded by its exponent k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CubeRootOfUnity {
    One,
    Omega,
    Omega2,
}

impl CubeRootOfUnity {
    pub fn exponent(self) -> u8 {
        match self {
            CubeRootOfUnity::One => 0,
            CubeRootOfUnity::Omega => 1,
            CubeRootOfUnity::Omega2 => 2,
        }
    }

    pub fn from_exponent(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => CubeRootOfUnity::One,
            1 => CubeRootOfUnity::Omega,
            _ => CubeRootOfUnity::Omega2,
        }
    }

    pub fn value(self) -> CycloNumber {
        CycloNumber::omega().pow(self.exponent() as u32)
    }
}

struct Chi3Table {
    group: ClassGroup,
    values: [u8; 3],
}

fn chi3_table() -> &'static Chi3Table {
    static T: OnceLock<Chi3Table> = OnceLock::new();
    T.get_or_init(|| {
        let group = ClassGroup::new(9);
        assert_eq!(group.order(), 3);
        let beta = CycloNumber::from_ints(1, 3);
        let mut values = [0u8; 3];
        values[group.class_of(&CycloNumber::one()).unwrap()] = 0;
        values[group.class_of(&beta).unwrap()] = 1;
        values[group.class_of(&beta.pow(2)).unwrap()] = 2;
        Chi3Table { group, values }
    })
}

/// The character on classes mod 9 recording the action on the real cube
/// root of 3: 1 -> 1, 1+3w -> w, (1+3w)^2 -> w^2.
pub fn chi3_class(alpha: &CycloNumber) -> Result<CubeRootOfUnity> {
    if !alpha.is_integral() {
        return Err(Error::invalid(format!("{alpha} is not integral")));
    }
    let t = chi3_table();
    let c = t.group.class_of(alpha)?;
    Ok(CubeRootOfUnity::from_exponent(t.values[c] as i64))
}

pub fn check_prime_4_7(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    match p % 9 {
        4 | 7 => Ok(()),
        r => Err(Error::UnsupportedPrime(format!(
            "p ≡ {r} (mod 9) unsupported"
        ))),
    }
}

/// Representatives mod 9p of Gal(H_{3p} | K(p^(1/3))), each fixing 3^(1/3).
///
/// The subgroup is the set of cubes in the class group mod 3p (it has index
/// 3 because 9 does not divide p - 1); each cube class is lifted along
/// (1 + 3pw)^k, which is trivial mod 3p, until chi3 is trivial.
pub fn trace_subgroup_reps(p: u64) -> Result<Vec<ClassRep>> {
    check_prime_4_7(p)?;
    let g = ClassGroup::new(3 * p);
    let mut cubes: Vec<usize> = (0..g.order()).map(|c| g.pow(c, 3)).collect();
    cubes.sort_unstable();
    cubes.dedup();
    if cubes.len() * 3 != g.order() {
        return Err(Error::Consistency(format!(
            "cube subgroup mod {} has index {} (expected 3)",
            3 * p,
            g.order() as f64 / cubes.len() as f64
        )));
    }
    let f = 9 * p as i64;
    let lift = CycloNumber::from_ints(1, 3 * p as i64);
    let mut out = Vec::with_capacity(cubes.len());
    for c in cubes {
        let mut a = g.rep(c).alpha;
        let mut k = 0;
        while chi3_class(&a)? != CubeRootOfUnity::One {
            let r = residue(&(&a * &lift), f);
            a = CycloNumber::from_ints(r.0, r.1);
            k += 1;
            if k > 2 {
                return Err(Error::Consistency("no cube-root-of-3 fixing lift".into()));
            }
        }
        out.push(ClassRep::new(a, f as u64)?);
    }
    Ok(out)
}

/// An ideal of the order Z[f*w], stored by its canonical Z-basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrderIdeal {
    pub conductor: u64,
    pub generators: Vec<CycloNumber>,
    pub hnf: Lattice,
}

impl OrderIdeal {
    /// The unit ideal Z[f*w].
    pub fn unit(f: u64) -> Self {
        OrderIdeal {
            conductor: f,
            generators: vec![CycloNumber::one()],
            hnf: Lattice::order(f),
        }
    }

    /// [Z[fw] : I]
    pub fn norm(&self) -> Integer {
        let r = self.hnf.covolume() / rug::Rational::from(self.conductor);
        r.numer().clone()
    }

    /// Stable under multiplication by f*w, i.e. a Z[f*w]-module.
    pub fn is_order_module(&self) -> bool {
        let fw = CycloNumber::from_ints(0, self.conductor as i64);
        self.hnf.basis().iter().all(|v| self.hnf.contains(&(&fw * v)))
    }

    pub fn mul(&self, other: &OrderIdeal) -> Result<OrderIdeal> {
        if self.conductor != other.conductor {
            return Err(Error::invalid("ideals of different orders"));
        }
        Ok(OrderIdeal {
            conductor: self.conductor,
            generators: self
                .generators
                .iter()
                .flat_map(|x| other.generators.iter().map(move |y| x * y))
                .collect(),
            hnf: self.hnf.mul(&other.hnf),
        })
    }

    pub fn conjugate(&self) -> OrderIdeal {
        OrderIdeal {
            conductor: self.conductor,
            generators: self.generators.iter().map(|g| g.conjugate()).collect(),
            hnf: self.hnf.conjugate(),
        }
    }

    /// I * conj(I) == N(I) * Z[fw]
    pub fn is_invertible(&self) -> bool {
        let prod = self.hnf.mul(&self.hnf.conjugate());
        let n = CycloNumber::from(self.norm());
        prod == Lattice::order(self.conductor).scale(&n).expect("nonzero norm")
    }
}

/// alpha*Z_K ∩ Z[f*w] as an ideal of Z[f*w].
pub fn ideal_for_class(alpha: &CycloNumber, f: u64) -> Result<OrderIdeal> {
    let rep = ClassRep::new(alpha.clone(), f)?;
    let az = Lattice::maximal_order().scale(&rep.alpha)?;
    let hnf = az.intersect(&Lattice::order(f));
    let [v1, v2] = hnf.basis();
    Ok(OrderIdeal {
        conductor: f,
        generators: vec![v1, v2],
        hnf,
    })
}

/// I * L, for a lattice whose conductor divides that of I.
pub fn ideal_act(ideal: &OrderIdeal, l: &Lattice) -> Result<Lattice> {
    let cl = conductor_of_lattice(l);
    if !ideal.conductor.is_multiple_of(cl) {
        return Err(Error::invalid(format!(
            "lattice conductor {cl} does not divide ideal conductor {}",
            ideal.conductor
        )));
    }
    let out = ideal.hnf.mul(l);
    let co = conductor_of_lattice(&out);
    if co != cl {
        return Err(Error::Consistency(format!(
            "ideal action changed the conductor {cl} -> {co}"
        )));
    }
    Ok(out)
}

impl ClassRep {
    /// Residue pair (a, b) in [0, f)^2.
    pub fn residue_pair(&self) -> (i64, i64) {
        self.residue()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> CycloNumber {
        s.parse().unwrap()
    }

    #[test]
    fn class_group_orders() {
        assert_eq!(class_reps(1).len(), 1);
        assert_eq!(class_reps(9).len(), 3);
        assert_eq!(class_reps(21).len(), 6);
        assert_eq!(class_reps(63).len(), 18);
        assert_eq!(class_reps(39).len(), 12);
        assert_eq!(class_reps(117).len(), 36);
    }

    #[test]
    fn chi3_calibration() {
        assert_eq!(chi3_class(&k("1")).unwrap(), CubeRootOfUnity::One);
        assert_eq!(chi3_class(&k("1+3w")).unwrap(), CubeRootOfUnity::Omega);
        assert_eq!(chi3_class(&k("-8-3w")).unwrap(), CubeRootOfUnity::Omega2);
        assert!(chi3_class(&k("3")).is_err());
    }

    #[test]
    fn trace_reps() {
        let r7 = trace_subgroup_reps(7).unwrap();
        assert_eq!(r7.len(), 2);
        assert_eq!(trace_subgroup_reps(13).unwrap().len(), 4);
        for r in r7 {
            assert_eq!(r.modulus, 63);
            assert_eq!(chi3_class(&r.alpha).unwrap(), CubeRootOfUnity::One);
        }
        assert!(matches!(trace_subgroup_reps(11), Err(Error::UnsupportedPrime(_))));
        assert!(matches!(trace_subgroup_reps(19), Err(Error::UnsupportedPrime(_))));
    }

    #[test]
    fn ideal_for_rho_class() {
        // (9p^2 - 3p + 1, 3 + 9p w^2) at p = 7
        let i = ideal_for_class(&k("1+21w").conjugate(), 63).unwrap();
        let expected = Lattice::new(&[k("421"), &k("3") + &(&k("63") * &CycloNumber::omega2())]).unwrap();
        assert_eq!(i.hnf, expected);
        assert!(i.is_order_module());
        assert!(i.is_invertible());
        assert_eq!(i.norm(), 421);
    }

    #[test]
    fn unit_class_is_order() {
        assert_eq!(ideal_for_class(&k("1"), 63).unwrap().hnf, Lattice::order(63));
        assert!(ideal_for_class(&k("3"), 63).is_err());
    }

    #[test]
    fn action_preserves_conductor() {
        let i = ideal_for_class(&k("1+21w").conjugate(), 63).unwrap();
        let l = Lattice::from_tau(&k("7/9w")).unwrap();
        let il = ideal_act(&i, &l).unwrap();
        assert_eq!(conductor_of_lattice(&il), 63);
        assert_eq!(ideal_act(&OrderIdeal::unit(63), &l).unwrap(), l);
        let bad = Lattice::from_tau(&k("7/27w")).unwrap();
        assert!(ideal_act(&i, &bad).is_err());
    }
}
