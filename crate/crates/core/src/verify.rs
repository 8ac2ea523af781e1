//! Self-checks of the analytic and arithmetic identities the construction
//! relies on, grouped into suites and reported as a pass/fail matrix.

use std::fmt;
use std::str::FromStr;

use rug::{Float, Rational};
use serde::Serialize;

use crate::cyclofield::CycloNumber;
use crate::error::{Error, Result};
use crate::etaeval::{
    eval_f, eval_h, f_product_constant, f_product_expected, phi_at_cusp, phi_point, x_product_check, BigComplex,
    PrecisionContext, UhpPoint,
};
use crate::heegner::galois_vectors;
use crate::qseries::{ligozat_check, verify_weierstrass_identity, x_quotient, EtaQuotient};
use crate::Case;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// The q-expansion identity, modularity of the eta quotients, and Phi at cusps.
    Parametrization,
    /// h, f and the f-product constant at CM points.
    Constants,
    /// Galois images of the base point and the induced maps on E9.
    Shimura,
    /// The f-product formula for x at the base point.
    Product,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Parametrization, Suite::Constants, Suite::Shimura, Suite::Product];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Parametrization => "parametrization",
            Suite::Constants => "constants",
            Suite::Shimura => "shimura",
            Suite::Product => "product",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Working precision for the numerical checks.
    pub digits: u32,
    /// Order of the q-expansion check.
    pub order: i64,
    pub primes: Vec<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { digits: 100, order: 250, primes: vec![7, 13, 31, 43] }
    }
}

struct Collector {
    suite: Suite,
    out: Vec<CheckResult>,
}

impl Collector {
    fn push(&mut self, name: impl Into<String>, r: Result<(bool, String)>) {
        let (passed, detail) = r.unwrap_or_else(|e| (false, e.to_string()));
        self.out.push(CheckResult { suite: self.suite, name: name.into(), passed, detail });
    }
}

fn close(a: &BigComplex, b: &BigComplex, tol: &Float) -> (bool, String) {
    let d = a.dist(b);
    (d < *tol, format!("diff {:.3e}", d.to_f64()))
}

fn uhp(s: &str, ctx: PrecisionContext) -> Result<UhpPoint> {
    UhpPoint::from_exact(&s.parse::<CycloNumber>()?, ctx)
}

fn parametrization(c: &mut Collector, opts: &VerifyOptions) {
    c.push(
        format!("y^2 + y = x^3 - 1 through q^{}", opts.order),
        verify_weierstrass_identity(&Rational::from(opts.order)).and_then(|chk| {
            let r = chk.certify()?;
            Ok((r == 0, format!("{} coefficients, max residual {r}", chk.terms_checked)))
        }),
    );
    let x = ligozat_check(&x_quotient());
    c.push("x is a function on Gamma0(243)", Ok((x.is_function_on_gamma0, x.details)));
    c.push(
        "f is a function on Gamma0(81)",
        EtaQuotient::new(81, &[(27, 1), (3, -1)]).map(|f| {
            let r = ligozat_check(&f);
            (r.is_function_on_gamma0, r.details)
        }),
    );
    let ctx = PrecisionContext::new(opts.digits);
    let tol = ctx.tolerance();
    c.push(
        "Phi(-1/27) = (0, w)",
        phi_at_cusp(&Rational::from((-1, 27)), ctx).map(|v| {
            let (a, da) = close(&v.x, &BigComplex::zero(ctx), &tol);
            let (b, db) = close(&v.y, &BigComplex::omega(ctx), &tol);
            (a && b, format!("x {da}, y {db}"))
        }),
    );
    c.push(
        "Phi(1/81) = infinity",
        match phi_at_cusp(&Rational::from((1, 81)), ctx) {
            Err(Error::Pole(m)) => Ok((true, m)),
            Err(e) => Err(e),
            Ok(_) => Ok((false, "finite value".into())),
        },
    );
    c.push(
        "Phi((w - 1)/27) = (cbrt 3, -2)",
        uhp("-1/27+1/27w", ctx).and_then(|t| phi_point(&t, ctx)).map(|v| {
            let cbrt3 = BigComplex::from_real(Float::with_val(ctx.bits(), 3).cbrt(), ctx);
            let (a, da) = close(&v.x, &cbrt3, &tol);
            let (b, db) = close(&v.y, &BigComplex::from_f64(-2.0, 0.0, ctx), &tol);
            (a && b, format!("x {da}, y {db}"))
        }),
    );
}

fn constants(c: &mut Collector, opts: &VerifyOptions) {
    let ctx = PrecisionContext::new(opts.digits + PrecisionContext::DEFAULT_GUARD);
    let tol = ctx.ten_pow_neg(opts.digits as i64);
    c.push(
        "h(w/3) = 3 sqrt(-3)",
        uhp("1/3w", ctx).and_then(|t| eval_h(&t, ctx)).map(|h| {
            close(&h, &BigComplex::from_cyclo(&CycloNumber::sqrt_minus3(), ctx).scale_i64(3), &tol)
        }),
    );
    c.push(
        "f(w/9) = e^(-pi i/6) / sqrt 3",
        uhp("1/9w", ctx).and_then(|t| eval_f(&t, ctx)).map(|f| {
            let s = Float::with_val(ctx.bits(), 3).sqrt().recip();
            close(&f, &BigComplex::exp_i_pi(-1, 6, ctx).scale(&s), &tol)
        }),
    );
    c.push(
        "f((w-7)/27) f(w/9) / f((w-7)/9) = -e^(pi i/6) 3^(-1/6)",
        f_product_constant(ctx).map(|v| close(&v, &f_product_expected(ctx), &tol)),
    );
}

fn shimura(c: &mut Collector, opts: &VerifyOptions) {
    for &p in &opts.primes {
        for case in Case::both() {
            match galois_vectors(p, case) {
                Err(e) => c.push(format!("p = {p}, case {case}"), Err(e)),
                Ok(vs) => {
                    for v in vs {
                        let detail = format!("word {}, induced {}", v.word, v.induced);
                        c.push(format!("{} image, p = {p}, case {case}", v.element), Ok((v.passed(), detail)));
                    }
                }
            }
        }
    }
}

fn product(c: &mut Collector, opts: &VerifyOptions) {
    let ctx = PrecisionContext::new(opts.digits);
    let tol = ctx.ten_pow_neg((opts.digits as i64 * 4) / 5);
    for &p in &opts.primes {
        for case in Case::both() {
            c.push(
                format!("x at the base point, p = {p}, case {case}"),
                x_product_check(p, case, ctx).map(|r| (r < tol, format!("residual {:.3e}", r.to_f64()))),
            );
        }
    }
}

/// Run one suite. Failures are reported as rows, never as errors.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut c = Collector { suite, out: Vec::new() };
    match suite {
        Suite::Parametrization => parametrization(&mut c, opts),
        Suite::Constants => constants(&mut c, opts),
        Suite::Shimura => shimura(&mut c, opts),
        Suite::Product => product(&mut c, opts),
    }
    c.out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_modest_precision() {
        let opts = VerifyOptions { digits: 60, order: 200, primes: vec![7] };
        for s in Suite::ALL {
            let rows = run_suite(s, &opts);
            assert!(!rows.is_empty());
            for r in rows {
                assert!(r.passed, "{s}: {} ({})", r.name, r.detail);
            }
        }
    }

    #[test]
    fn short_expansion_is_not_certified() {
        let opts = VerifyOptions { order: 20, ..VerifyOptions::default() };
        let rows = run_suite(Suite::Parametrization, &opts);
        assert!(!rows[0].passed);
    }

    #[test]
    fn parse_names() {
        assert_eq!("shimura".parse::<Suite>().unwrap(), Suite::Shimura);
        assert!("bogus".parse::<Suite>().is_err());
    }
}
