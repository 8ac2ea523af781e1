//! The curves with j = 0 that appear in the construction, their isomorphisms,
//! and arithmetic on their points.
//!
//! Four models are supported:
//!
//! * `E9`: y^2 + y = x^3 - 1,
//! * `EtaModel(n)`: y^2 + y = 3n x^3 - 1,
//! * `Fermat(n)`: x^3 + y^3 = n (affine chart z = 1 of x^3 + y^3 = n z^3),
//! * `ShortW(n)`: y^2 = x^3 - 432 n^2.
//!
//! `E9`, `EtaModel(n)` and `Fermat(n)` are isomorphic over Q to `ShortW(9)`,
//! `ShortW(n)` and `ShortW(n)` respectively. The group law is computed on the
//! long Weierstrass form y^2 + a3 y = x^3 + a6 attached to each model
//! (for `EtaModel(n)` via (X, Y) = (3n x, 3n y), giving a3 = 3n, a6 = -9n^2).
//! The identity of `Fermat(n)` is the point (1 : -1 : 0) at infinity.

mod field;
mod fp;
mod height;

pub use field::CurveField;
pub use fp::{e1_3torsion_shapes, is_three_cube, primitive_cube_root, FpCurve};
pub use height::{canonical_height, naive_height};

use std::fmt;

use rug::{Integer, Rational};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::cyclofield::CycloNumber;
use crate::error::{Error, Result};
use crate::etaeval::{BigComplex, PrecisionContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveModel {
    E9,
    EtaModel(u64),
    Fermat(u64),
    ShortW(u64),
}

impl CurveModel {
    fn check(&self) -> Result<()> {
        match self {
            CurveModel::EtaModel(0) | CurveModel::Fermat(0) | CurveModel::ShortW(0) => {
                Err(Error::invalid("curve parameter must be positive"))
            }
            _ => Ok(()),
        }
    }

    /// The n with this model isomorphic over Q to y^2 = x^3 - 432 n^2.
    pub fn short_n(&self) -> u64 {
        match *self {
            CurveModel::E9 => 9,
            CurveModel::EtaModel(n) | CurveModel::Fermat(n) | CurveModel::ShortW(n) => n,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            CurveModel::E9 => "e9",
            CurveModel::EtaModel(_) => "eta",
            CurveModel::Fermat(_) => "fermat",
            CurveModel::ShortW(_) => "shortw",
        }
    }

    /// Left minus right side of the model equation at (x, y).
    pub fn residual<F: CurveField>(&self, x: &F, y: &F) -> F {
        let one = x.lift_i64(1);
        match *self {
            CurveModel::E9 => y.square().add(y).sub(&x.cube().sub(&one)),
            CurveModel::EtaModel(n) => {
                let c = x.lift_i64(3 * n as i64);
                y.square().add(y).sub(&c.mul(&x.cube()).sub(&one))
            }
            CurveModel::Fermat(n) => x.cube().add(&y.cube()).sub(&x.lift_i64(n as i64)),
            CurveModel::ShortW(n) => {
                let a6 = x.lift(&(Rational::from(n) * n * 432u32));
                y.square().sub(&x.cube().sub(&a6))
            }
        }
    }

    /// Coefficient a3 of the internal long Weierstrass form.
    fn long_a3<F: CurveField>(&self, t: &F) -> F {
        match *self {
            CurveModel::E9 => t.lift_i64(1),
            CurveModel::EtaModel(n) => t.lift_i64(3 * n as i64),
            CurveModel::Fermat(_) | CurveModel::ShortW(_) => t.lift_i64(0),
        }
    }

    fn to_long<F: CurveField>(&self, x: &F, y: &F) -> Result<(F, F)> {
        match *self {
            CurveModel::E9 | CurveModel::ShortW(_) => Ok((x.clone(), y.clone())),
            CurveModel::EtaModel(n) => {
                let c = x.lift_i64(3 * n as i64);
                Ok((c.mul(x), c.mul(y)))
            }
            CurveModel::Fermat(_) => self.to_short(x, y),
        }
    }

    fn from_long<F: CurveField>(&self, u: &F, v: &F) -> Result<(F, F)> {
        match *self {
            CurveModel::E9 | CurveModel::ShortW(_) => Ok((u.clone(), v.clone())),
            CurveModel::EtaModel(n) => {
                let c = u.lift_i64(3 * n as i64);
                Ok((u.div(&c)?, v.div(&c)?))
            }
            CurveModel::Fermat(_) => self.from_short(u, v),
        }
    }

    /// Affine coordinates on y^2 = x^3 - 432 n^2.
    fn to_short<F: CurveField>(&self, x: &F, y: &F) -> Result<(F, F)> {
        let n = self.short_n() as i64;
        match *self {
            CurveModel::E9 => Ok((x.lift_i64(36).mul(x), x.lift_i64(108).mul(&y.lift_i64(2).mul(y).add(&y.lift_i64(1))))),
            CurveModel::EtaModel(_) => {
                let c = x.lift_i64(12 * n);
                Ok((c.mul(x), c.mul(&y.lift_i64(2).mul(y).add(&y.lift_i64(1)))))
            }
            CurveModel::Fermat(_) => {
                let s = x.add(y);
                if s.is_zero() {
                    return Err(Error::Domain("x + y = 0 on a Fermat cubic".into()));
                }
                let u = x.lift_i64(12 * n).div(&s)?;
                let v = x.lift_i64(36 * n).mul(&x.sub(y)).div(&s)?;
                Ok((u, v))
            }
            CurveModel::ShortW(_) => Ok((x.clone(), y.clone())),
        }
    }

    fn from_short<F: CurveField>(&self, u: &F, v: &F) -> Result<(F, F)> {
        let n = self.short_n() as i64;
        match *self {
            CurveModel::E9 => {
                let x = u.div(&u.lift_i64(36))?;
                let y = v.div(&v.lift_i64(108))?.sub(&v.lift_i64(1)).div(&v.lift_i64(2))?;
                Ok((x, y))
            }
            CurveModel::EtaModel(_) => {
                let c = u.lift_i64(12 * n);
                let x = u.div(&c)?;
                let y = v.div(&c)?.sub(&v.lift_i64(1)).div(&v.lift_i64(2))?;
                Ok((x, y))
            }
            CurveModel::Fermat(_) => {
                if u.is_zero() {
                    return Err(Error::Field("point lies on the line at infinity of the Fermat chart".into()));
                }
                let d = u.lift_i64(6).mul(u);
                let c = u.lift_i64(36 * n);
                Ok((c.add(v).div(&d)?, c.sub(v).div(&d)?))
            }
            CurveModel::ShortW(_) => Ok((u.clone(), v.clone())),
        }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveModel::E9 => write!(f, "y^2 + y = x^3 - 1"),
            CurveModel::EtaModel(n) => write!(f, "y^2 + y = {}x^3 - 1", 3 * n),
            CurveModel::Fermat(n) => write!(f, "x^3 + y^3 = {n}"),
            CurveModel::ShortW(n) => write!(f, "y^2 = x^3 - {}", 432 * (*n as u128) * (*n as u128)),
        }
    }
}

impl Serialize for CurveModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// A point on one of the models; `xy = None` is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint<F> {
    pub model: CurveModel,
    pub xy: Option<(F, F)>,
}

fn long_add<F: CurveField>(a3: &F, p: &Option<(F, F)>, q: &Option<(F, F)>) -> Result<Option<(F, F)>> {
    let ((x1, y1), (x2, y2)) = match (p, q) {
        (None, _) => return Ok(q.clone()),
        (_, None) => return Ok(p.clone()),
        (Some(p), Some(q)) => (p, q),
    };
    let lambda = if x1.same(x2) {
        let s = y1.add(y2).add(a3);
        if s.is_zero() {
            return Ok(None);
        }
        x1.lift_i64(3).mul(&x1.square()).div(&y1.lift_i64(2).mul(y1).add(a3))?
    } else {
        y2.sub(y1).div(&x2.sub(x1))?
    };
    let nu = y1.sub(&lambda.mul(x1));
    let x3 = lambda.square().sub(x1).sub(x2);
    let y3 = lambda.mul(&x3).add(&nu).add(a3).neg();
    Ok(Some((x3, y3)))
}

impl<F: CurveField> CurvePoint<F> {
    /// A point with the given affine coordinates; exact coordinates must satisfy the equation.
    pub fn new(model: CurveModel, x: F, y: F) -> Result<Self> {
        model.check()?;
        if F::EXACT && !model.residual(&x, &y).is_zero() {
            return Err(Error::invalid(format!("point is not on {model}")));
        }
        Ok(CurvePoint { model, xy: Some((x, y)) })
    }

    pub fn infinity(model: CurveModel) -> Self {
        CurvePoint { model, xy: None }
    }

    pub fn is_infinity(&self) -> bool {
        self.xy.is_none()
    }

    pub fn x(&self) -> Option<&F> {
        self.xy.as_ref().map(|p| &p.0)
    }

    pub fn y(&self) -> Option<&F> {
        self.xy.as_ref().map(|p| &p.1)
    }

    /// Left minus right side of the curve equation (None at infinity).
    pub fn residual(&self) -> Option<F> {
        self.xy.as_ref().map(|(x, y)| self.model.residual(x, y))
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.model != o.model {
            return Err(Error::invalid(format!("points on different models ({} vs {})", self.model, o.model)));
        }
        Ok(())
    }

    fn long(&self) -> Result<Option<(F, F)>> {
        self.xy.as_ref().map(|(x, y)| self.model.to_long(x, y)).transpose()
    }

    fn from_long_xy(model: CurveModel, xy: Option<(F, F)>) -> Result<Self> {
        let xy = xy.map(|(u, v)| model.from_long(&u, &v)).transpose()?;
        Ok(CurvePoint { model, xy })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let (Some(p), Some(_)) = (&self.xy, &o.xy) else {
            return Ok(if self.is_infinity() { o.clone() } else { self.clone() });
        };
        let a3 = self.model.long_a3(&p.0);
        let sum = long_add(&a3, &self.long()?, &o.long()?)?;
        Self::from_long_xy(self.model, sum)
    }

    pub fn negate(&self) -> Self {
        let xy = self.xy.as_ref().map(|(x, y)| match self.model {
            CurveModel::E9 | CurveModel::EtaModel(_) => (x.clone(), y.neg().sub(&y.lift_i64(1))),
            CurveModel::ShortW(_) => (x.clone(), y.neg()),
            CurveModel::Fermat(_) => (y.clone(), x.clone()),
        });
        CurvePoint { model: self.model, xy }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.negate())
    }

    /// [m]P by double-and-add.
    pub fn mul(&self, m: i64) -> Result<Self> {
        let mut base = if m < 0 { self.negate() } else { self.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = Self::infinity(self.model);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.add(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.add(&base)?;
            }
        }
        Ok(acc)
    }

    /// [w]P, acting as (x, y) -> (w x, y) on the Weierstrass-type models.
    pub fn omega_map(&self) -> Result<Self> {
        let Some((x, y)) = &self.xy else {
            return Ok(self.clone());
        };
        let w = x.omega()?;
        match self.model {
            CurveModel::Fermat(_) => {
                let (u, v) = self.model.to_short(x, y)?;
                let xy = self.model.from_short(&w.mul(&u), &v)?;
                Ok(CurvePoint { model: self.model, xy: Some(xy) })
            }
            _ => Ok(CurvePoint { model: self.model, xy: Some((w.mul(x), y.clone())) }),
        }
    }

    /// [m + k w]P for an algebraic integer m + k w.
    pub fn mul_endo(&self, a: &CycloNumber) -> Result<Self> {
        let (m, k) = a
            .to_integer_pair()
            .ok_or_else(|| Error::invalid(format!("{a} is not an algebraic integer")))?;
        let to_i64 = |v: Integer| v.to_i64().ok_or_else(|| Error::invalid("endomorphism coefficient too large"));
        let (m, k) = (to_i64(m)?, to_i64(k)?);
        let mp = self.mul(m)?;
        if k == 0 {
            return Ok(mp);
        }
        mp.add(&self.omega_map()?.mul(k)?)
    }

    /// The same point on another model of the same curve.
    pub fn transport(&self, target: CurveModel) -> Result<Self> {
        target.check()?;
        if target.short_n() != self.model.short_n() {
            return Err(Error::invalid(format!("{} and {target} are not isomorphic models", self.model)));
        }
        let xy = match &self.xy {
            None => None,
            Some((x, y)) => {
                let (u, v) = self.model.to_short(x, y)?;
                Some(target.from_short(&u, &v)?)
            }
        };
        Ok(CurvePoint { model: target, xy })
    }

    /// Twist by a cube root of a: (x, y) -> (x / cbrt(a), y), from `E9` or
    /// `EtaModel(b)` to `EtaModel(a b)` (from `E9`, a must be divisible by 3).
    pub fn cubic_twist(&self, a: u64, cbrt_a: &F) -> Result<Self> {
        let c_src = match self.model {
            CurveModel::E9 => 1,
            CurveModel::EtaModel(b) => 3 * b,
            m => return Err(Error::invalid(format!("cubic twist is not defined on {m}"))),
        };
        let c = c_src * a;
        if a == 0 || !c.is_multiple_of(3) {
            return Err(Error::invalid(format!("twist by cube root of {a} does not land on an eta model")));
        }
        if !cbrt_a.cube().same(&cbrt_a.lift_i64(a as i64)) {
            return Err(Error::invalid(format!("supplied value is not a cube root of {a}")));
        }
        let model = CurveModel::EtaModel(c / 3);
        let xy = self.xy.as_ref().map(|(x, y)| Ok::<_, Error>((x.div(cbrt_a)?, y.clone()))).transpose()?;
        Ok(CurvePoint { model, xy })
    }

    /// The affine point (x, y) = `xy` after transport, without checking the equation.
    pub fn new_unchecked(model: CurveModel, xy: Option<(F, F)>) -> Self {
        CurvePoint { model, xy }
    }
}

impl CurvePoint<Rational> {
    pub fn to_k(&self) -> CurvePoint<CycloNumber> {
        let xy = self.xy.as_ref().map(|(x, y)| (CycloNumber::from(x.clone()), CycloNumber::from(y.clone())));
        CurvePoint { model: self.model, xy }
    }

    /// Fermat points as coprime integers (X : Y : Z).
    pub fn fermat_projective(&self) -> Option<(Integer, Integer, Integer)> {
        if !matches!(self.model, CurveModel::Fermat(_)) {
            return None;
        }
        let Some((x, y)) = &self.xy else {
            return Some((Integer::from(1), Integer::from(-1), Integer::new()));
        };
        let z = x.denom().clone().lcm(y.denom());
        let xn = x.numer() * Integer::from(&z / x.denom());
        let yn = y.numer() * Integer::from(&z / y.denom());
        Some((xn, yn, z))
    }
}

impl CurvePoint<CycloNumber> {
    /// Complex conjugation (the non-trivial automorphism of K) on coordinates.
    pub fn conjugate(&self) -> Self {
        let xy = self.xy.as_ref().map(|(x, y)| (x.conjugate(), y.conjugate()));
        CurvePoint { model: self.model, xy }
    }

    /// The point as a rational point, if both coordinates are rational.
    pub fn to_rational(&self) -> Option<CurvePoint<Rational>> {
        let xy = match &self.xy {
            None => None,
            Some((x, y)) => {
                if !x.is_rational() || !y.is_rational() {
                    return None;
                }
                Some((x.a().clone(), y.a().clone()))
            }
        };
        Some(CurvePoint { model: self.model, xy })
    }

    pub fn embed(&self, ctx: PrecisionContext) -> CurvePoint<BigComplex> {
        let xy = self
            .xy
            .as_ref()
            .map(|(x, y)| (BigComplex::from_cyclo(x, ctx), BigComplex::from_cyclo(y, ctx)));
        CurvePoint { model: self.model, xy }
    }
}

impl<F: CurveField + fmt::Display> fmt::Display for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.xy {
            None if matches!(self.model, CurveModel::Fermat(_)) => write!(f, "(1:-1:0)"),
            None => write!(f, "infinity"),
            Some((x, y)) => write!(f, "x={x}, y={y}"),
        }
    }
}

impl<F: CurveField + fmt::Display> Serialize for CurvePoint<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("model", &self.model)?;
        m.serialize_entry("n", &self.model.short_n())?;
        match &self.xy {
            None => m.serialize_entry("infinity", &true)?,
            Some((x, y)) => {
                m.serialize_entry("x", &x.to_string())?;
                m.serialize_entry("y", &y.to_string())?;
            }
        }
        m.end()
    }
}

/// Fields over which torsion subgroups can be listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionField {
    Rationals,
    /// K = Q(w)
    K,
    /// The degree-18 field L = K(cbrt 3, ...) of the construction; the torsion
    /// of `EtaModel(1)` over it is already defined over K.
    L,
}

fn generic_twist(n: u64) -> bool {
    let is_cube = |m: u64| {
        let r = (m as f64).cbrt().round() as u64;
        (r.saturating_sub(1)..=r + 1).any(|c| c * c * c == m)
    };
    n > 1 && !is_cube(n) && !(n.is_multiple_of(2) && is_cube(n / 2))
}

/// The torsion subgroup of a model over a field, as points with coordinates in K.
pub fn torsion_list(model: CurveModel, field: TorsionField) -> Result<Vec<CurvePoint<CycloNumber>>> {
    let k = |a: i64, b: i64| CycloNumber::from_ints(a, b);
    let pts: Vec<(CycloNumber, CycloNumber)> = match (model, field) {
        (CurveModel::EtaModel(1), TorsionField::K | TorsionField::L) => {
            let mut v = vec![(k(0, 0), k(0, 1)), (k(0, 0), k(-1, -1))];
            for w in [k(1, 0), k(0, 1), k(-1, -1)] {
                v.push((w.clone(), k(1, 0)));
                v.push((w, k(-2, 0)));
            }
            v
        }
        (CurveModel::EtaModel(1), TorsionField::Rationals) => vec![(k(1, 0), k(1, 0)), (k(1, 0), k(-2, 0))],
        (CurveModel::Fermat(1), TorsionField::Rationals) => vec![(k(1, 0), k(0, 0)), (k(0, 0), k(1, 0))],
        (CurveModel::Fermat(2), TorsionField::Rationals) => vec![(k(1, 0), k(1, 0))],
        (CurveModel::Fermat(n), TorsionField::Rationals) if n >= 3 => vec![],
        // for n neither a cube nor twice a cube only the flex points x = 0 are torsion
        (CurveModel::EtaModel(n), TorsionField::K) if generic_twist(n) => {
            vec![(k(0, 0), k(0, 1)), (k(0, 0), k(-1, -1))]
        }
        (CurveModel::EtaModel(n), TorsionField::Rationals) if generic_twist(n) => vec![],
        _ => return Err(Error::Unsupported(format!("torsion of {model} over {field:?}"))),
    };
    let mut out = vec![CurvePoint::infinity(model)];
    for (x, y) in pts {
        out.push(CurvePoint::new(model, x, y)?);
    }
    Ok(out)
}
