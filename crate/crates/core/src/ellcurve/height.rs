use rug::{Float, Integer, Rational};

use super::{CurveModel, CurvePoint};
use crate::error::{Error, Result};

const BITS: u32 = 256;

/// log max(|a|, |b|) for x = a/b.
pub fn naive_height(x: &Rational) -> f64 {
    let m = std::cmp::max(x.numer().clone().abs(), x.denom().clone());
    Float::with_val(BITS, &m).ln().to_f64()
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn valuation(r: &Rational, l: u64) -> i64 {
    let val = |z: &Integer| {
        if z.cmp0().is_eq() {
            return i64::MAX / 2;
        }
        let (_, k) = z.clone().remove_factor(&Integer::from(l));
        k as i64
    };
    val(r.numer()) - val(r.denom())
}

/// Whether (x, y) on y^2 = x^3 + a6 (a6 integral) reduces to a smooth point mod l.
fn nonsingular_mod(x: &Rational, y: &Rational, l: u64) -> bool {
    if valuation(x, l) < 0 {
        return true;
    }
    let d_x = l == 3 || valuation(x, l) > 0;
    let d_y = l == 2 || valuation(y, l) > 0;
    !(d_x && d_y)
}

/// Archimedean local height by Tate's series; valid because x > 0 on every
/// real point of y^2 = x^3 - 432 n^2.
fn archimedean(x: &Rational, a6: &Rational) -> f64 {
    let b6 = Float::with_val(BITS, a6) * 4u32;
    let xf = Float::with_val(BITS, x);
    let mut lambda = Float::with_val(BITS, xf.clone().abs().ln()) / 2u32;
    let mut t = Float::with_val(BITS, 1) / xf;
    let mut weight = Float::with_val(BITS, 1) / 8u32;
    let cutoff = Float::with_val(BITS, 1e-40);
    while weight > cutoff {
        let t3 = Float::with_val(BITS, t.clone().square() * &t);
        let w = Float::with_val(BITS, &t * 4u32) + Float::with_val(BITS, &t3 * &t) * &b6;
        let z = Float::with_val(BITS, 1) - Float::with_val(BITS, &t3 * &b6) * 2u32;
        lambda += Float::with_val(BITS, z.clone().abs().ln()) * &weight;
        t = w / z;
        weight /= 4u32;
    }
    lambda.to_f64()
}

/// Canonical height of a rational point, normalized as lim h(x(mP)) / m^2
/// with h(a/b) = log max(|a|, |b|) (so that it is twice the local-height sum).
pub fn canonical_height(pt: &CurvePoint<Rational>) -> Result<f64> {
    let n = pt.model.short_n();
    let p = pt.transport(CurveModel::ShortW(n))?;
    if p.is_infinity() {
        return Ok(0.0);
    }
    let a6 = Rational::from(-(Integer::from(n) * n * 432u32));
    let bad = prime_factors(6 * n);
    let mut q = p.clone();
    for m in 1..=24i64 {
        let Some((x, y)) = &q.xy else {
            return Ok(0.0);
        };
        if bad.iter().all(|&l| nonsingular_mod(x, y, l)) {
            let finite = Float::with_val(BITS, x.denom()).ln().to_f64() / 2.0;
            let local_sum = archimedean(x, &a6) + finite;
            return Ok(2.0 * local_sum / (m * m) as f64);
        }
        q = q.add(&p)?;
    }
    Err(Error::Consistency("no multiple of the point has good reduction at all bad primes".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(n: u64, x: &str, y: &str) -> CurvePoint<Rational> {
        CurvePoint::new(CurveModel::Fermat(n), x.parse().unwrap(), y.parse().unwrap()).unwrap()
    }

    /// h(x(2^k P)) / 4^k, the defining limit.
    fn brute_force(p: &CurvePoint<Rational>, k: u32) -> f64 {
        let mut q = p.transport(CurveModel::ShortW(p.model.short_n())).unwrap();
        for _ in 0..k {
            q = q.add(&q).unwrap();
        }
        naive_height(q.x().unwrap()) / 4f64.powi(k as i32)
    }

    #[test]
    fn matches_defining_limit() {
        for (n, x, y) in [(7, "2", "-1"), (13, "2513/1005", "-1388/1005"), (43, "805/228", "-229/228")] {
            let p = fermat(n, x, y);
            let h = canonical_height(&p).unwrap();
            // the error of the limit decays like 4^-k
            let b = brute_force(&p, 9);
            assert!((h - b).abs() < 1e-3, "n={n}: {h} vs {b}");
        }
    }

    #[test]
    fn quadratic() {
        let p = fermat(7, "2", "-1");
        let h = canonical_height(&p).unwrap();
        let h2 = canonical_height(&p.mul(2).unwrap()).unwrap();
        let h3 = canonical_height(&p.mul(3).unwrap()).unwrap();
        assert!((h2 - 4.0 * h).abs() < 1e-8);
        assert!((h3 - 9.0 * h).abs() < 1e-8);
    }

    #[test]
    fn torsion_is_zero() {
        let t = CurvePoint::new(CurveModel::Fermat(1), Rational::from(1), Rational::from(0)).unwrap();
        assert_eq!(canonical_height(&t).unwrap(), 0.0);
        let inf: CurvePoint<Rational> = CurvePoint::infinity(CurveModel::ShortW(5));
        assert_eq!(canonical_height(&inf).unwrap(), 0.0);
    }
}
