//! The automorphisms w, v, t of X0(243) and their action on y^2 + y = x^3 - 1.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{gamma0_equivalent, NormalizedIsogeny, ProjMatrix, LEVEL};
use crate::cyclofield::{CubeRootOfUnity, CycloNumber};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    W,
    V,
    VInv,
    T,
    TInv,
}

impl Letter {
    pub fn matrix(self) -> ProjMatrix {
        match self {
            Letter::W => ProjMatrix::new(0, -1, 243, 0),
            Letter::V => ProjMatrix::new(1, 0, 81, 1),
            Letter::VInv => ProjMatrix::new(1, 0, -81, 1),
            Letter::T => ProjMatrix::new(9, 1, -243, -18),
            Letter::TInv => ProjMatrix::new(-18, -1, 243, 9),
        }
    }

    fn symbol(self) -> (&'static str, i32) {
        match self {
            Letter::W => ("w", 1),
            Letter::V => ("v", 1),
            Letter::VInv => ("v", -1),
            Letter::T => ("t", 1),
            Letter::TInv => ("t", -1),
        }
    }

    /// Action on E9 as (exponent of w, multiple of (0, w)).
    fn e9_action(self) -> (u8, u8) {
        match self {
            Letter::W => (0, 0),
            Letter::V => (2, 0),
            Letter::VInv => (1, 0),
            Letter::T => (2, 1),
            Letter::TInv => (1, 2),
        }
    }
}

/// A word in w, v, t and their inverses; `s3_len` marks a leading S3 factor
/// for display.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModWord {
    pub letters: Vec<Letter>,
    pub s3_len: Option<usize>,
}

impl ModWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        ModWord { letters, s3_len: None }
    }

    pub fn identity() -> Self {
        ModWord::default()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn matrix(&self) -> ProjMatrix {
        self.letters
            .iter()
            .fold(ProjMatrix::identity(), |m, l| (m * l.matrix()).canonical())
    }

    /// self followed by other (as a matrix product).
    pub fn concat(&self, other: &ModWord) -> ModWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied());
        ModWord { letters, s3_len: self.s3_len }
    }
}


fn render(letters: &[Letter]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let (sym, _) = letters[i].symbol();
        let mut e = 0;
        while i < letters.len() && letters[i].symbol().0 == sym {
            e += letters[i].symbol().1;
            i += 1;
        }
        match e {
            0 => {}
            1 => out.push(sym.to_string()),
            _ => out.push(format!("{sym}^{e}")),
        }
    }
    out.join(" ")
}

impl fmt::Display for ModWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        match self.s3_len {
            Some(n) if n > 0 => {
                let rest = render(&self.letters[n..]);
                write!(f, "({})", render(&self.letters[..n]))?;
                if !rest.is_empty() {
                    write!(f, " {rest}")?;
                }
                Ok(())
            }
            _ => f.write_str(&render(&self.letters)),
        }
    }
}

impl Serialize for ModWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Gamma0(243) A = Gamma0(243) B, up to rational scalars.
pub fn same_coset(a: &ProjMatrix, b: &ProjMatrix) -> bool {
    let m = (*a * b.adj()).canonical();
    m.det() == 1 && m.c % LEVEL == 0
}

/// The six elements of S3 = <w, v^-1 w v>, as words, identity first.
pub fn s3_elements() -> Vec<ModWord> {
    let gens = [vec![Letter::W], vec![Letter::VInv, Letter::W, Letter::V]];
    let mut found: Vec<ModWord> = vec![ModWord::identity()];
    let mut frontier = vec![ModWord::identity()];
    while let Some(word) = frontier.pop() {
        for g in &gens {
            let next = word.concat(&ModWord::new(g.clone()));
            if !found.iter().any(|f| same_coset(&f.matrix(), &next.matrix())) {
                found.push(next.clone());
                frontier.insert(0, next);
            }
        }
    }
    for w in &mut found {
        w.s3_len = Some(w.letters.len());
    }
    found
}

fn power(l: Letter, e: usize) -> Vec<Letter> {
    vec![l; e]
}

/// The 54 words s t^i v^j, s in S3, i, j in {0, 1, 2}; identity first.
pub fn candidate_words() -> Vec<ModWord> {
    let mut out = Vec::with_capacity(54);
    for s in s3_elements() {
        for i in 0..3 {
            for j in 0..3 {
                let mut letters = s.letters.clone();
                letters.extend(power(Letter::T, i));
                letters.extend(power(Letter::V, j));
                out.push(ModWord { letters, s3_len: s.s3_len });
            }
        }
    }
    out
}

/// Structure of MAut(X0(243)), an extension of Z/3 = <v> by S3, checked at the level of cosets.
#[derive(Clone, Debug, Serialize)]
pub struct MautReport {
    pub elements: Vec<ModWord>,
    pub order: usize,
    pub w_involution: bool,
    pub v_order_three: bool,
    pub s3_order: usize,
    pub closed: bool,
    pub v_normalizes_s3: bool,
    pub t_cubed_scalar: bool,
    pub normalizes: bool,
}

fn normalizes_gamma0(m: &ProjMatrix) -> bool {
    // m g m^-1 in Gamma0(243) for sample elements g of Gamma0(243)
    let gens = [
        ProjMatrix::new(1, 1, 0, 1),
        ProjMatrix::new(1, 0, 243, 1),
        ProjMatrix::new(2, 1, 243, 122),
    ];
    gens.iter().all(|g| {
        let c = (*m * *g * m.adj()).canonical();
        c.det() == 1 && c.c % LEVEL == 0
    })
}

/// The 18 elements s v^j of MAut(X0(243)) with the group relations checked.
pub fn maut_group() -> MautReport {
    let s3 = s3_elements();
    let mut elements = Vec::new();
    for s in &s3 {
        for j in 0..3 {
            let mut letters = s.letters.clone();
            letters.extend(power(Letter::V, j));
            elements.push(ModWord { letters, s3_len: s.s3_len });
        }
    }
    let mats: Vec<ProjMatrix> = elements.iter().map(|e| e.matrix()).collect();
    let distinct = (0..mats.len()).all(|i| (0..i).all(|j| !same_coset(&mats[i], &mats[j])));
    let id = ProjMatrix::identity();
    let w = Letter::W.matrix();
    let v = Letter::V.matrix();
    let t = Letter::T.matrix();
    let s3_mats: Vec<ProjMatrix> = s3.iter().map(|s| s.matrix()).collect();
    let v_normalizes_s3 = s3_mats
        .iter()
        .all(|s| s3_mats.iter().any(|m| same_coset(m, &(v * *s * v.adj()))));
    let closed = mats
        .iter()
        .all(|a| mats.iter().all(|b| mats.iter().any(|m| same_coset(m, &(*a * *b)))));
    MautReport {
        order: if distinct { elements.len() } else { 0 },
        w_involution: same_coset(&(w * w), &id),
        v_order_three: same_coset(&v.pow(3), &id) && !same_coset(&v, &id),
        s3_order: s3.len(),
        closed,
        v_normalizes_s3,
        t_cubed_scalar: t.pow(3) == id,
        normalizes: mats.iter().all(normalizes_gamma0),
        elements,
    }
}

/// An affine map Z -> w^a Z + k (0, w) on y^2 + y = x^3 - 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineE9Map {
    pub omega_exp: u8,
    pub translation: u8,
}

impl AffineE9Map {
    pub fn new(omega_exp: u8, translation: u8) -> Self {
        AffineE9Map {
            omega_exp: omega_exp % 3,
            translation: translation % 3,
        }
    }

    /// Composition self o other. [w] fixes (0, w), so exponents simply add.
    pub fn compose(&self, other: &AffineE9Map) -> AffineE9Map {
        AffineE9Map::new(self.omega_exp + other.omega_exp, self.translation + other.translation)
    }

    pub fn multiplier(&self) -> CubeRootOfUnity {
        CubeRootOfUnity::from_exponent(self.omega_exp as i64)
    }

    /// The translation point's y-coordinate: none, w, or w^2.
    pub fn translation_y(&self) -> Option<CycloNumber> {
        match self.translation {
            0 => None,
            1 => Some(CycloNumber::omega()),
            _ => Some(CycloNumber::omega2()),
        }
    }
}

impl fmt::Display for AffineE9Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.omega_exp {
            0 => "Z",
            1 => "wZ",
            _ => "w^2Z",
        };
        match self.translation {
            0 => write!(f, "Z -> {a}"),
            1 => write!(f, "Z -> {a} + (0,w)"),
            _ => write!(f, "Z -> {a} + (0,w^2)"),
        }
    }
}

/// The map on E9 induced by a word of the form s t^i v^j.
pub fn induced_e9_action(word: &ModWord) -> Result<AffineE9Map> {
    let m = word.matrix();
    if !candidate_words().iter().any(|c| same_coset(&c.matrix(), &m)) {
        return Err(Error::Structure(format!("{word} is not of the form s t^i v^j")));
    }
    Ok(word.letters.iter().fold(AffineE9Map::new(0, 0), |acc, l| {
        let (a, k) = l.e9_action();
        acc.compose(&AffineE9Map::new(a, k))
    }))
}

fn matches(word: &ModWord, from: &CycloNumber, to: &CycloNumber) -> Result<bool> {
    let image = word.matrix().act(from)?;
    Ok(gamma0_equivalent(&image, to, LEVEL).is_some())
}

/// A word s t^i v^j whose matrix sends from.tau to a Gamma0(243)-equivalent of to.tau.
pub fn automorphism_search(from: &NormalizedIsogeny, to: &NormalizedIsogeny) -> Result<ModWord> {
    if from.conductor != to.conductor {
        return Err(Error::invalid(format!(
            "conductors differ ({} vs {})",
            from.conductor, to.conductor
        )));
    }
    for word in candidate_words() {
        if matches(&word, &from.tau, &to.tau)? {
            return Ok(word);
        }
    }
    Err(Error::SearchFailure(format!(
        "no s t^i v^j maps {} to {}",
        from.tau, to.tau
    )))
}

/// Every matching candidate word.
pub fn automorphism_search_all(from: &NormalizedIsogeny, to: &NormalizedIsogeny) -> Result<Vec<ModWord>> {
    let mut out = Vec::new();
    for word in candidate_words() {
        if matches(&word, &from.tau, &to.tau)? {
            out.push(word);
        }
    }
    Ok(out)
}
