use std::collections::BTreeSet;

use rug::Integer;
use serde::Serialize;

use crate::cyclofield::check_prime_4_7;
use crate::ellcurve::{e1_3torsion_shapes, is_three_cube, primitive_cube_root};
use crate::error::Result;

/// The reduction argument replayed over F_p: when 3 is not a cube mod p the
/// x-coordinate of the traced point reduces to a pair that no torsion point
/// can reduce to, so the point has infinite order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub p: u64,
    pub three_is_cube: bool,
    /// The smallest primitive cube root of unity mod p.
    pub u: u64,
    /// (-3)^((p-1)/6) mod p
    pub c: u64,
    pub predicted_shapes: Vec<(u64, u64)>,
    pub torsion_shapes: Vec<(u64, u64)>,
    pub disjoint: bool,
    pub verdict: String,
}

impl Certificate {
    /// Whether the reduction argument proves the point has infinite order.
    pub fn guarantees_nontorsion(&self) -> bool {
        !self.three_is_cube && self.disjoint
    }
}

/// {(u^2 c, u c), (u c, u^2 c)} with c = (-3)^((p-1)/6) mod p.
pub fn predicted_shapes(p: u64) -> Result<BTreeSet<(u64, u64)>> {
    check_prime_4_7(p)?;
    let u = primitive_cube_root(p)?;
    let c = minus_three_power(p);
    let (a, b) = (u * u % p * c % p, u * c % p);
    Ok(BTreeSet::from([(a, b), (b, a)]))
}

fn minus_three_power(p: u64) -> u64 {
    let m = Integer::from(p);
    Integer::from(p - 3).pow_mod(&Integer::from((p - 1) / 6), &m).unwrap().to_u64().unwrap()
}

pub fn certificate(p: u64) -> Result<Certificate> {
    check_prime_4_7(p)?;
    let three_is_cube = is_three_cube(p)?;
    let predicted = predicted_shapes(p)?;
    let torsion = e1_3torsion_shapes(p)?;
    let disjoint = predicted.is_disjoint(&torsion);
    let verdict = if three_is_cube {
        "inconclusive: 3 is a cube mod p".to_string()
    } else if disjoint {
        "nontorsion guaranteed: 3 is not a cube mod p".to_string()
    } else {
        "inconclusive: predicted reduction meets the torsion".to_string()
    };
    Ok(Certificate {
        p,
        three_is_cube,
        u: primitive_cube_root(p)?,
        c: minus_three_power(p),
        predicted_shapes: predicted.into_iter().collect(),
        torsion_shapes: torsion.into_iter().collect(),
        disjoint,
        verdict,
    })
}
