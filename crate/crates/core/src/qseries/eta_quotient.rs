use std::collections::BTreeMap;
use std::fmt;

use rug::{Integer, Rational};
use serde::Serialize;

use super::{eta_product_integers, n_terms, order_to_24, QSeries};
use crate::error::{Error, Result};

/// prod_d eta(d z)^(r_d) at level N.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EtaQuotient {
    pub level: u64,
    pub exponents: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    pub fn new(level: u64, exps: &[(u64, i64)]) -> Result<Self> {
        if level == 0 {
            return Err(Error::invalid("level must be positive"));
        }
        let mut exponents = BTreeMap::new();
        for &(d, r) in exps {
            if d == 0 || !level.is_multiple_of(d) {
                return Err(Error::invalid(format!("{d} does not divide the level {level}")));
            }
            *exponents.entry(d).or_insert(0) += r;
        }
        exponents.retain(|_, r| *r != 0);
        Ok(EtaQuotient { level, exponents })
    }

    /// Weight (1/2) * sum r_d.
    pub fn weight(&self) -> Rational {
        Rational::from((self.exponents.values().sum::<i64>(), 2))
    }

    /// 24 * (order of vanishing at infinity) = sum d * r_d.
    pub fn valuation24(&self) -> i64 {
        self.exponents.iter().map(|(&d, &r)| d as i64 * r).sum()
    }

    pub fn valuation(&self) -> Rational {
        Rational::from((self.valuation24(), 24))
    }

    /// Product of two quotients, at the lcm of their levels.
    pub fn mul(&self, other: &EtaQuotient) -> EtaQuotient {
        let level = Integer::from(self.level).lcm(&Integer::from(other.level)).to_u64().unwrap();
        let pairs: Vec<(u64, i64)> = self
            .exponents
            .iter()
            .chain(other.exponents.iter())
            .map(|(&d, &r)| (d, r))
            .collect();
        EtaQuotient::new(level, &pairs).expect("divisors of either level divide the lcm")
    }

    pub fn pow(&self, e: i64) -> EtaQuotient {
        let pairs: Vec<(u64, i64)> = self.exponents.iter().map(|(&d, &r)| (d, r * e)).collect();
        EtaQuotient::new(self.level, &pairs).expect("same divisors")
    }

    /// Exact Laurent expansion with all exponents strictly below `order`.
    pub fn expand(&self, order: &Rational) -> Result<QSeries> {
        self.expand24(order_to_24(order))
    }

    pub fn expand24(&self, order24: i64) -> Result<QSeries> {
        let val24 = self.valuation24();
        if order24 <= val24 {
            return Err(Error::invalid(format!(
                "truncation order {}/24 does not exceed the valuation {val24}/24",
                order24
            )));
        }
        let factors: Vec<(u64, i64)> = self.exponents.iter().map(|(&d, &r)| (d, r)).collect();
        let ints = eta_product_integers(&factors, n_terms(val24, order24));
        Ok(QSeries::from_parts(
            val24,
            ints.into_iter().map(Rational::from).collect(),
            order24,
        ))
    }

    /// Order of vanishing at the cusp a/c (c | N) in the local parameter there.
    pub fn order_at_cusp(&self, c: u64) -> Rational {
        let n = self.level;
        let g = Integer::from(c).gcd(&Integer::from(n / c)).to_u64().unwrap();
        let mut s = Rational::new();
        for (&d, &r) in &self.exponents {
            let gd = Integer::from(d).gcd(&Integer::from(c)).to_u64().unwrap();
            s += Rational::from((Integer::from(gd * gd) * r, Integer::from(g * c * d)));
        }
        s * Rational::from((n, 24))
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(d, r)| if *r == 1 { format!("eta({d}z)") } else { format!("eta({d}z)^{r}") })
            .collect();
        write!(f, "{} [N={}]", parts.join(" "), self.level)
    }
}

/// Per-condition outcome of Ligozat's criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LigozatReport {
    pub weight_zero: bool,
    pub infinity_condition: bool,
    pub zero_condition: bool,
    pub square_condition: bool,
    pub is_function_on_gamma0: bool,
    pub details: String,
}

/// Ligozat's sufficient conditions for an eta quotient to be a modular function on Gamma0(N):
/// sum r_d = 0, sum d r_d = 0 (24), sum (N/d) r_d = 0 (24), prod d^(r_d) a rational square.
pub fn ligozat_check(eq: &EtaQuotient) -> LigozatReport {
    let n = eq.level as i64;
    let sum_r: i64 = eq.exponents.values().sum();
    let s_inf = eq.valuation24();
    let s_zero: i64 = eq.exponents.iter().map(|(&d, &r)| (n / d as i64) * r).sum();
    let mut prod = Rational::from(1);
    for (&d, &r) in &eq.exponents {
        let p = Rational::from(Integer::from(Integer::u_pow_u(d as u32, r.unsigned_abs() as u32)));
        prod *= if r >= 0 { p } else { p.recip() };
    }
    let square = prod.numer().is_perfect_square() && prod.denom().is_perfect_square();
    let weight_zero = sum_r == 0;
    let infinity_condition = s_inf.rem_euclid(24) == 0;
    let zero_condition = s_zero.rem_euclid(24) == 0;
    LigozatReport {
        weight_zero,
        infinity_condition,
        zero_condition,
        square_condition: square,
        is_function_on_gamma0: weight_zero && infinity_condition && zero_condition && square,
        details: format!(
            "sum r = {sum_r}; sum d r = {s_inf}; sum (N/d) r = {s_zero}; prod d^r = {prod}"
        ),
    }
}
