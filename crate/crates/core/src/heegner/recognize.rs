//! Rational reconstruction of high-precision values.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::cyclofield::CycloNumber;
use crate::etaeval::BigComplex;

/// The last continued-fraction convergent of x with denominator at most
/// `max_den`, if it is within `tol * max(1, |x|)` of x.
pub fn recognize_rational(x: &Float, max_den: &Integer, tol: &Float) -> Option<Rational> {
    let mut r = x.to_rational()?;
    let (mut h1, mut h2) = (Integer::from(1), Integer::new());
    let (mut k1, mut k2) = (Integer::new(), Integer::from(1));
    let mut best: Option<Rational> = None;
    loop {
        let a = r.clone().floor().into_numer_denom().0;
        let h = Integer::from(&a * &h1) + &h2;
        let k = Integer::from(&a * &k1) + &k2;
        if &k > max_den {
            break;
        }
        best = Some(Rational::from((h.clone(), k.clone())));
        let frac = r - &a;
        if frac.cmp0().is_eq() {
            break;
        }
        r = frac.recip();
        (h2, h1) = (h1, h);
        (k2, k1) = (k1, k);
    }
    let best = best?;
    let scale = std::cmp::max_by(Float::with_val(x.prec(), 1), x.clone().abs(), |a, b| a.partial_cmp(b).unwrap());
    let err = Float::with_val(x.prec(), x - &best).abs();
    (err <= Float::with_val(x.prec(), tol * scale)).then_some(best)
}

/// z = a + b w with rational a, b: b = 2 Im(z)/sqrt 3, a = Re(z) + b/2.
///
/// Denominators are bounded by 10^(digits/3) and the error must be below
/// 10^(-5 digits/6) relative to the size of the coordinate. Every real has
/// convergents within 10^(-2 digits/3) under that bound, so a looser
/// tolerance would accept noise.
pub fn recognize_k(z: &BigComplex) -> Option<CycloNumber> {
    let ctx = z.ctx();
    let bits = ctx.bits();
    let sqrt3 = Float::with_val(bits, 3).sqrt();
    let b = Float::with_val(bits, &z.im * 2u32) / &sqrt3;
    let a = Float::with_val(bits, &z.re + Float::with_val(bits, &b / 2u32));
    let max_den = Integer::from(10).pow(ctx.digits / 3);
    let tol = ctx.ten_pow_neg(5 * ctx.digits as i64 / 6);
    let a = recognize_rational(&a, &max_den, &tol)?;
    let b = recognize_rational(&b, &max_den, &tol)?;
    Some(CycloNumber::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etaeval::PrecisionContext;

    #[test]
    fn recovers_fractions() {
        let ctx = PrecisionContext::new(60);
        for s in ["1265/183", "-1256/183", "0", "-7", "413561995/316639"] {
            let q: Rational = s.parse().unwrap();
            let x = ctx.rational(&q);
            let got = recognize_rational(&x, &Integer::from(10).pow(20), &ctx.ten_pow_neg(30)).unwrap();
            assert_eq!(got, q);
        }
    }

    #[test]
    fn rejects_transcendental() {
        let ctx = PrecisionContext::new(90);
        let pi = ctx.pi();
        assert!(recognize_rational(&pi, &Integer::from(10).pow(30), &ctx.ten_pow_neg(75)).is_none());
        let z = BigComplex::new(ctx.pi(), Float::with_val(ctx.bits(), 2).sqrt(), ctx);
        assert!(recognize_k(&z).is_none());
    }

    #[test]
    fn recovers_k_elements() {
        let ctx = PrecisionContext::new(90);
        for s in ["1/3+2/7w", "-5w", "12345/678-9/11w"] {
            let x: CycloNumber = s.parse().unwrap();
            assert_eq!(recognize_k(&BigComplex::from_cyclo(&x, ctx)).unwrap(), x);
        }
    }
}
