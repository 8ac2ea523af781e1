//! Dirichlet coefficients and central values of L(E_n, s) for the curves
//! E_n: x^3 + y^3 = n z^3.

mod conductor;

pub use conductor::{conductor_formula, ConductorTable};

use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use crate::cyclofield::is_prime;
use crate::error::{Error, Result};

/// Largest number of Dirichlet coefficients a job may use.
pub const DEFAULT_TERM_BUDGET: usize = 5_000_000;

/// Whether n has no cube factor other than 1.
pub fn is_cubefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut d = 2u64;
    while d * d * d <= n {
        if n.is_multiple_of(d * d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// l + 1 - #E_n(F_l), and 0 at the primes of additive reduction (l | 3n).
pub fn a_ell(n: u64, l: u64) -> i64 {
    if (3 * n).is_multiple_of(l) || l % 3 == 2 {
        // additive reduction, or supersingular (j = 0 and l = 2 mod 3)
        return 0;
    }
    // number of x with x^3 = c, for every c
    let mut cube_count = vec![0u64; l as usize];
    for x in 0..l {
        cube_count[(x * x % l * x % l) as usize] += 1;
    }
    let nl = n % l;
    let affine: u64 = (0..l)
        .map(|c| cube_count[c as usize] * cube_count[((nl + l - c) % l) as usize])
        .sum();
    // z = 0 contributes the three points (1 : -u : 0) with u^3 = 1
    l as i64 + 1 - (affine as i64 + 3)
}

/// a_1, ..., a_m (index 0 is unused and zero).
pub fn coefficients(n: u64, m: usize) -> Vec<i64> {
    let primes: Vec<u64> = (2..=m as u64).filter(|&l| is_prime(l)).collect();
    let ap: Vec<i64> = primes.par_iter().map(|&l| a_ell(n, l)).collect();
    let mut smallest = vec![0u64; m + 1];
    let mut prime_index = vec![usize::MAX; m + 1];
    for (i, &l) in primes.iter().enumerate() {
        prime_index[l as usize] = i;
        for k in (l as usize..=m).step_by(l as usize) {
            if smallest[k] == 0 {
                smallest[k] = l;
            }
        }
    }
    let mut a = vec![0i64; m + 1];
    if m >= 1 {
        a[1] = 1;
    }
    for k in 2..=m {
        let l = smallest[k] as usize;
        let mut q = k;
        while q % l == 0 {
            q /= l;
        }
        if q > 1 {
            a[k] = a[q] * a[k / q];
            continue;
        }
        let al = ap[prime_index[l]];
        a[k] = if k == l {
            al
        } else if (3 * n).is_multiple_of(l as u64) {
            0
        } else {
            al * a[k / l] - l as i64 * a[k / (l * l)]
        };
    }
    a
}

/// An L-value job: E_n with conductor N at the given precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LSeriesJob {
    pub n: u64,
    pub conductor: u64,
    pub digits: u32,
    /// Number of coefficients; by default enough for the smaller exponential to fall below 10^-digits.
    pub terms: Option<usize>,
    pub term_budget: usize,
}

impl LSeriesJob {
    pub fn new(n: u64, conductor: u64, digits: u32) -> Self {
        LSeriesJob { n, conductor, digits, terms: None, term_budget: DEFAULT_TERM_BUDGET }
    }

    fn bits(&self) -> u32 {
        ((self.digits + 10) as f64 * std::f64::consts::LOG2_10) as u32 + 16
    }

    /// Terms needed for e^(-2 pi m / (A sqrt N)) < 10^-digits.
    pub fn required_terms(&self, a: f64) -> usize {
        let need = (self.digits as f64 + 1.0) * std::f64::consts::LN_10 * a * (self.conductor as f64).sqrt()
            / (2.0 * std::f64::consts::PI);
        (need.ceil() as usize).max(10 * (self.conductor as f64).sqrt() as usize)
    }

    fn validate(&self) -> Result<()> {
        if !is_cubefree(self.n) {
            return Err(Error::invalid(format!("{} is not cubefree", self.n)));
        }
        if self.conductor == 0 {
            return Err(Error::invalid("conductor must be positive"));
        }
        Ok(())
    }

    /// sum_m (a_m / m) (e^(-2 pi m A / sqrt N) + eps e^(-2 pi m / (A sqrt N))).
    ///
    /// For the true conductor and root number eps this equals L(E_n, 1) for
    /// every A > 0, which is what makes the sum a check on (N, eps).
    pub fn smoothed_sum(&self, a: f64, eps: i32) -> Result<LValue> {
        self.validate()?;
        let big = if a < 1.0 { 1.0 / a } else { a };
        let terms = self.terms.unwrap_or_else(|| self.required_terms(big));
        if terms > self.term_budget {
            return Err(Error::TermCount { needed: terms, budget: self.term_budget });
        }
        let coeffs = coefficients(self.n, terms);
        let bits = self.bits();
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        let sqrt_n = Float::with_val(bits, self.conductor).sqrt();
        let af = Float::with_val(bits, a);
        let r1 = Float::with_val(bits, -(Float::with_val(bits, &two_pi * &af) / &sqrt_n)).exp();
        let r2 = Float::with_val(bits, -(two_pi / (af * &sqrt_n))).exp();
        let (mut p1, mut p2) = (Float::with_val(bits, 1), Float::with_val(bits, 1));
        let mut sum = Float::with_val(bits, 0);
        let mut last = Float::with_val(bits, 0);
        for (m, &am) in coeffs.iter().enumerate().skip(1) {
            p1 *= &r1;
            p2 *= &r2;
            if am == 0 {
                continue;
            }
            let w = if eps >= 0 { Float::with_val(bits, &p1 + &p2) } else { Float::with_val(bits, &p1 - &p2) };
            last = w * am / m as u64;
            sum += &last;
        }
        // the tail is dominated by a geometric series in the slower exponential
        let ratio = std::cmp::max_by(r1, r2, |x, y| x.partial_cmp(y).unwrap());
        let tail = last.abs() * &ratio / (Float::with_val(bits, 1) - &ratio);
        Ok(LValue { value: sum.to_f64(), exact: sum, error_estimate: tail.to_f64(), terms })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LValue {
    pub value: f64,
    #[serde(skip)]
    pub exact: Float,
    pub error_estimate: f64,
    pub terms: usize,
}

/// L(E_n, 1) = 2 sum (a_m / m) e^(-2 pi m / sqrt N), assuming root number +1.
pub fn l_value(n: u64, conductor: u64, digits: u32) -> Result<LValue> {
    LSeriesJob::new(n, conductor, digits).smoothed_sum(1.0, 1)
}

/// L(E_n, 1) 2 pi cbrt(n) / (sqrt 3 Gamma(1/3)^3), rounded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LAlg {
    pub n: u64,
    pub conductor: u64,
    pub value: f64,
    pub rounded: i64,
    /// |value - rounded| > 0.01
    pub flagged: bool,
}

pub fn l_alg_from(job: &LSeriesJob) -> Result<LAlg> {
    let l = job.smoothed_sum(1.0, 1)?;
    let bits = job.bits();
    let third = Float::with_val(bits, 1) / 3u32;
    let gamma = third.gamma();
    let factor = Float::with_val(bits, Constant::Pi) * 2u32 * Float::with_val(bits, job.n).cbrt()
        / (Float::with_val(bits, 3).sqrt() * Float::with_val(bits, gamma.clone().square() * &gamma));
    let value = Float::with_val(bits, l.exact * factor).to_f64();
    let rounded = value.round() as i64;
    Ok(LAlg { n: job.n, conductor: job.conductor, value, rounded, flagged: (value - rounded as f64).abs() > 0.01 })
}

pub fn l_alg(n: u64, conductor: u64, digits: u32) -> Result<LAlg> {
    l_alg_from(&LSeriesJob::new(n, conductor, digits))
}
