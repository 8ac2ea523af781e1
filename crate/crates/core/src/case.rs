use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Which twist a construction targets: case 1 gives points on x^3 + y^3 = p,
/// case 2 on x^3 + y^3 = p^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    One,
    Two,
}

impl Case {
    pub fn number(self) -> u32 {
        match self {
            Case::One => 1,
            Case::Two => 2,
        }
    }

    pub fn both() -> [Case; 2] {
        [Case::One, Case::Two]
    }
}

impl TryFrom<u32> for Case {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Case::One),
            2 => Ok(Case::Two),
            _ => Err(Error::invalid(format!("case must be 1 or 2, got {n}"))),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl Serialize for Case {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.number())
    }
}
