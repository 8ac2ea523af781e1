use rug::{Integer, Rational};
use serde::Serialize;

use super::LEVEL;
use crate::cyclofield::{conductor_of_lattice, CycloNumber, Lattice};
use crate::error::{Error, Result};

/// A cyclic 243-isogeny C/src -> C/dst in the normal form C/<1,tau> -> C/<1/243,tau>.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedIsogeny {
    pub tau: CycloNumber,
    pub source: Lattice,
    pub target: Lattice,
    pub conductor: u64,
}

/// Smith form of a 2x2 integer matrix: (d1, d2, V) with U C V = diag(d1, d2), d1 | d2.
fn snf2(mut c: [[i128; 2]; 2]) -> (i128, i128, [[i128; 2]; 2]) {
    let mut v = [[1i128, 0], [0, 1]];
    loop {
        let mut best: Option<(i128, usize, usize)> = None;
        for i in 0..2 {
            for j in 0..2 {
                if c[i][j] != 0 && best.is_none_or(|(m, _, _)| c[i][j].abs() < m) {
                    best = Some((c[i][j].abs(), i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        if i == 1 {
            c.swap(0, 1);
        }
        if j == 1 {
            for row in c.iter_mut().chain(v.iter_mut()) {
                row.swap(0, 1);
            }
        }
        let p = c[0][0];
        let mut done = true;
        if c[1][0] != 0 {
            let q = c[1][0].div_euclid(p);
            c[1][0] -= q * c[0][0];
            c[1][1] -= q * c[0][1];
            done &= c[1][0] == 0;
        }
        if c[0][1] != 0 {
            let q = c[0][1].div_euclid(p);
            for row in c.iter_mut().chain(v.iter_mut()) {
                row[1] -= q * row[0];
            }
            done &= c[0][1] == 0;
        }
        if !done {
            continue;
        }
        if c[1][1] % p != 0 {
            c[0][0] += c[1][0];
            c[0][1] += c[1][1];
            continue;
        }
        break;
    }
    (c[0][0].abs(), c[1][1].abs(), v)
}

fn to_i128(r: &Rational) -> Result<i128> {
    if *r.denom() != 1 {
        return Err(Error::Structure("multiplier * source is not contained in target".into()));
    }
    r.numer().to_i128().ok_or_else(|| Error::Structure("coordinate overflow".into()))
}

/// Put the isogeny src -> dst (given by multiplication by `multiplier`) in
/// normal form: a basis (u, v) of dst with multiplier*src = <u, 243 v>, and
/// tau = u / (243 v), sign-adjusted into the upper half plane.
pub fn normalize_isogeny(src: &Lattice, dst: &Lattice, multiplier: &CycloNumber) -> Result<NormalizedIsogeny> {
    if multiplier.is_zero() {
        return Err(Error::invalid("zero multiplier"));
    }
    let img = src.basis().map(|g| multiplier * &g);
    let mut c = [[0i128; 2]; 2];
    for (row, s) in c.iter_mut().zip(img.iter()) {
        let (m, n) = dst.coords(s);
        *row = [to_i128(&m)?, to_i128(&n)?];
    }
    let (d1, d2, v) = snf2(c);
    if (d1, d2) != (1, LEVEL) {
        return Err(Error::Structure(format!(
            "quotient is Z/{d1} x Z/{d2}, not cyclic of order {LEVEL}"
        )));
    }
    // D' = V^{-1} D, V unimodular
    let det = v[0][0] * v[1][1] - v[0][1] * v[1][0];
    let vinv = [[v[1][1] * det, -v[0][1] * det], [-v[1][0] * det, v[0][0] * det]];
    let [b1, b2] = dst.basis();
    let comb = |r: [i128; 2]| -> CycloNumber {
        &(&b1 * &CycloNumber::from(Integer::from(r[0]))) + &(&b2 * &CycloNumber::from(Integer::from(r[1])))
    };
    let u = comb(vinv[0]);
    let w = comb(vinv[1]);
    let mut tau = u.checked_div(&(&w * &CycloNumber::from(LEVEL as i64)))?;
    if tau.b().cmp0().is_lt() {
        tau = -tau;
    }
    let conductor = Integer::from(conductor_of_lattice(src))
        .lcm(&Integer::from(conductor_of_lattice(dst)))
        .to_u64()
        .unwrap();
    Ok(NormalizedIsogeny {
        tau,
        source: src.clone(),
        target: dst.clone(),
        conductor,
    })
}

/// The positive integer m with [dst : m src] = 243 by covolume, if there is one.
pub fn isogeny_multiplier(src: &Lattice, dst: &Lattice) -> Option<Integer> {
    let m2 = dst.covolume() * Rational::from(LEVEL as i64) / src.covolume();
    if *m2.denom() != 1 || !m2.numer().is_perfect_square() {
        return None;
    }
    Some(m2.numer().clone().sqrt())
}
