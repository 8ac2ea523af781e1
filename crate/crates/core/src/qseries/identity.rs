//! The eta-quotient parametrization of y^2 + y = x^3 - 1 and its exact verification.

use std::collections::BTreeMap;

use rug::Rational;

use super::{order_to_24, EtaQuotient, QSeries};
use crate::error::{Error, Result};

/// Sturm bound for weight 7 on Gamma0(243): (7/12) * [SL2(Z) : Gamma0(243)] = (7/12) * 324.
pub const STURM_BOUND: i64 = 189;

const LEVEL: u64 = 243;

/// x(z) = eta(9z) eta(27z) / (eta(3z) eta(81z))
pub fn x_quotient() -> EtaQuotient {
    EtaQuotient::new(LEVEL, &[(9, 1), (27, 1), (3, -1), (81, -1)]).unwrap()
}

/// An integer combination of eta products.
type EtaPoly = Vec<(i64, EtaQuotient)>;

fn mono(c: i64, exps: &[(u64, i64)]) -> EtaPoly {
    vec![(c, EtaQuotient::new(LEVEL, exps).unwrap())]
}

fn poly_mul(a: &EtaPoly, b: &EtaPoly) -> EtaPoly {
    let mut acc: BTreeMap<Vec<(u64, i64)>, (i64, EtaQuotient)> = BTreeMap::new();
    for (ca, qa) in a {
        for (cb, qb) in b {
            let q = qa.mul(qb);
            let key: Vec<(u64, i64)> = q.exponents.iter().map(|(&d, &r)| (d, r)).collect();
            acc.entry(key).or_insert((0, q)).0 += ca * cb;
        }
    }
    acc.into_values().filter(|(c, _)| *c != 0).collect()
}

fn poly_add(a: &EtaPoly, b: &EtaPoly, sign: i64) -> EtaPoly {
    let mut out = a.clone();
    out.extend(b.iter().map(|(c, q)| (sign * c, q.clone())));
    poly_mul(&out, &mono(1, &[]))
}

fn poly_pow(a: &EtaPoly, e: u32) -> EtaPoly {
    (0..e).fold(mono(1, &[]), |acc, _| poly_mul(&acc, a))
}

/// The four eta factors eta(3z), eta(9z), eta(27z), eta(81z) as substitutable symbols.
#[derive(Clone, Debug)]
pub(crate) struct EtaSymbols {
    pub e3: EtaPoly,
    pub e9: EtaPoly,
    pub e27: EtaPoly,
    pub e81: EtaPoly,
}

impl Default for EtaSymbols {
    fn default() -> Self {
        EtaSymbols {
            e3: mono(1, &[(3, 1)]),
            e9: mono(1, &[(9, 1)]),
            e27: mono(1, &[(27, 1)]),
            e81: mono(1, &[(81, 1)]),
        }
    }
}

/// Numerators/denominators: x = A/B, y = Y/D with
/// D = eta27^4 - 3 eta9 eta81^3 and Y = -(eta9^4 + 9 eta9 eta81^3) - 2 D.
fn parts(s: &EtaSymbols) -> (EtaPoly, EtaPoly, EtaPoly, EtaPoly) {
    let a = poly_mul(&s.e9, &s.e27);
    let b = poly_mul(&s.e3, &s.e81);
    let e9e81_3 = poly_mul(&s.e9, &poly_pow(&s.e81, 3));
    let n = poly_add(&poly_pow(&s.e9, 4), &poly_mul(&mono(9, &[]), &e9e81_3), 1);
    let d = poly_add(&poly_pow(&s.e27, 4), &poly_mul(&mono(3, &[]), &e9e81_3), -1);
    let y = poly_add(&poly_mul(&mono(-1, &[]), &n), &poly_mul(&mono(2, &[]), &d), -1);
    (a, b, y, d)
}

/// Y^2 B^3 + Y D B^3 - A^3 D^2 + D^2 B^3, i.e. (y^2 + y - x^3 + 1) * D^2 B^3.
fn residual_poly(s: &EtaSymbols) -> EtaPoly {
    let (a, b, y, d) = parts(s);
    let b3 = poly_pow(&b, 3);
    let d2 = poly_pow(&d, 2);
    let t1 = poly_mul(&poly_pow(&y, 2), &b3);
    let t2 = poly_mul(&poly_mul(&y, &d), &b3);
    let t3 = poly_mul(&poly_pow(&a, 3), &d2);
    let t4 = poly_mul(&d2, &b3);
    poly_add(&poly_add(&poly_add(&t1, &t2, 1), &t3, -1), &t4, 1)
}

/// Outcome of the exact q-expansion check of the Weierstrass equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Largest |coefficient| of the cleared residual below the truncation order.
    pub max_residual: Rational,
    /// Truncation order in q (times 24).
    pub order24: i64,
    pub sturm_bound: i64,
    /// Number of distinct exponents compared.
    pub terms_checked: usize,
}

impl IdentityCheck {
    /// Coefficients up to and including q^STURM_BOUND were compared.
    pub fn certified(&self) -> bool {
        self.order24 > 24 * self.sturm_bound
    }

    pub fn holds(&self) -> bool {
        self.max_residual == 0
    }

    /// The residual, provided the check reached the Sturm bound.
    pub fn certify(&self) -> Result<Rational> {
        if !self.certified() {
            return Err(Error::UnderTruncation {
                order: self.order24 / 24,
                bound: self.sturm_bound,
            });
        }
        Ok(self.max_residual.clone())
    }
}

pub(crate) fn residual_with(s: &EtaSymbols, order24: i64) -> Result<IdentityCheck> {
    let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
    for (c, q) in residual_poly(s) {
        if q.valuation24() >= order24 {
            continue;
        }
        let ser = q.expand24(order24)?;
        for (k, v) in ser.coeffs().iter().enumerate() {
            let e = ser.val24() + 24 * k as i64;
            *coeffs.entry(e).or_default() += Rational::from(v * c);
        }
    }
    let max_residual = coeffs
        .values()
        .map(|v| Rational::from(v.abs_ref()))
        .max()
        .unwrap_or_default();
    Ok(IdentityCheck {
        max_residual,
        order24,
        sturm_bound: STURM_BOUND,
        terms_checked: coeffs.len(),
    })
}

/// Expands y^2 + y - x^3 + 1 (denominators cleared) exactly up to q^order.
pub fn verify_weierstrass_identity(order: &Rational) -> Result<IdentityCheck> {
    residual_with(&EtaSymbols::default(), order_to_24(order))
}

/// The q-expansions of x and y to the given order.
pub fn xy_series(order: &Rational) -> Result<(QSeries, QSeries)> {
    let order24 = order_to_24(order);
    let x = x_quotient().expand24(order24)?;
    let margin = order24 + 8 * 24;
    let eval = |p: &EtaPoly| -> Result<QSeries> {
        let mut acc: Option<QSeries> = None;
        for (c, q) in p {
            let s = q.expand24(margin)?.scale(&Rational::from(*c));
            acc = Some(match acc {
                None => s,
                Some(a) => a.add(&s)?,
            });
        }
        Ok(acc.expect("nonempty polynomial"))
    };
    let (_, _, ynum, d) = parts(&EtaSymbols::default());
    let y = eval(&ynum)?.div(&eval(&d)?)?.truncate(order24);
    if y.order24() < order24 {
        return Err(Error::Consistency("lost precision dividing q-series".into()));
    }
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let (x, y) = xy_series(&Rational::from(10)).unwrap();
        assert_eq!(x.valuation().unwrap(), -2);
        assert_eq!(y.valuation().unwrap(), -3);
        assert_eq!(*x.leading_coefficient().unwrap(), 1);
        assert!(x.is_integral() && y.is_integral());
    }

    #[test]
    fn weierstrass_from_series() {
        let (x, y) = xy_series(&Rational::from(15)).unwrap();
        let one = QSeries::constant(1, x.order24());
        let lhs = y.mul(&y).add(&y).unwrap();
        let rhs = x.pow(3).unwrap().sub(&one).unwrap();
        let diff = lhs.sub(&rhs).unwrap();
        // x^3 carries order 15 - 4 after multiplying the pole parts
        assert!(diff.truncate(24 * 9).is_zero());
    }

    #[test]
    fn low_order_not_certified() {
        let c = verify_weierstrass_identity(&Rational::from(50)).unwrap();
        assert!(c.holds());
        assert!(!c.certified());
        assert!(matches!(c.certify(), Err(Error::UnderTruncation { .. })));
    }

    #[test]
    fn perturbed_exponent_fails() {
        let mut s = EtaSymbols::default();
        s.e81 = mono(1, &[(81, 1), (3, 1), (9, -1)]);
        let c = residual_with(&s, 24 * 40).unwrap();
        assert!(!c.holds());
    }
}
