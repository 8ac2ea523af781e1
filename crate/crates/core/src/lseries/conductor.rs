use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::is_cubefree;
use crate::error::{Error, Result};

/// Conductor of x^3 + y^3 = n for odd cubefree n: the square of every prime
/// l != 3 dividing n, times 3^5 if 3 | n, 3^2 if n = +-1 mod 9 and 3^3 otherwise.
pub fn conductor_formula(n: u64) -> Result<u64> {
    if !is_cubefree(n) || n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("no conductor formula for n = {n}")));
    }
    let mut m = n;
    let mut out = 1u64;
    let mut l = 5;
    while m.is_multiple_of(3) {
        m /= 3;
    }
    while l * l <= m {
        if m.is_multiple_of(l) {
            out *= l * l;
            while m.is_multiple_of(l) {
                m /= l;
            }
        }
        l += 2;
    }
    if m > 1 {
        out *= m * m;
    }
    let three = if n.is_multiple_of(3) {
        243
    } else if matches!(n % 9, 1 | 8) {
        9
    } else {
        27
    };
    Ok(out * three)
}

/// Conductors keyed by n, as stored in the JSON configuration file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorTable {
    pub conductors: BTreeMap<u64, u64>,
}

const EMBEDDED: &str = include_str!("../../data/conductors.json");

impl ConductorTable {
    /// The table shipped with the crate (all n = p, p^2, 3p, 3p^2 for the table primes).
    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED).expect("embedded conductor table parses")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::invalid(format!("conductor table: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    /// The configured conductor, falling back to the formula.
    pub fn get(&self, n: u64) -> Result<u64> {
        match self.conductors.get(&n) {
            Some(&c) => Ok(c),
            None => conductor_formula(n),
        }
    }
}
