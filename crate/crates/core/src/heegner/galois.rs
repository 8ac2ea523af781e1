//! Galois action on the CM points through ideal classes of Z[9p w], and the
//! modular automorphisms realizing it.

use serde::Serialize;

use super::{base_lattices, base_point};
use crate::cyclofield::{check_prime_4_7, ideal_act, ideal_for_class, CycloNumber, Lattice};
use crate::error::Result;
use crate::modcurve::{
    automorphism_search, gamma0_equivalent, induced_e9_action, normalize_isogeny, AffineE9Map, ModWord,
    NormalizedIsogeny, LEVEL,
};
use crate::Case;

/// The image of the base point under the Galois element with class alpha
/// mod 9p: both lattices are multiplied by the ideal conj(alpha) Z_K ∩ Z[9p w].
pub fn galois_image(p: u64, case: Case, alpha: &CycloNumber) -> Result<NormalizedIsogeny> {
    let (src, dst) = base_lattices(p, case)?;
    act_on_pair(&src, &dst, alpha, 9 * p)
}

pub(crate) fn act_on_pair(src: &Lattice, dst: &Lattice, alpha: &CycloNumber, f: u64) -> Result<NormalizedIsogeny> {
    let ideal = ideal_for_class(&alpha.conjugate(), f)?;
    let s = ideal_act(&ideal, src)?;
    let d = ideal_act(&ideal, dst)?;
    normalize_isogeny(&s, &d, &CycloNumber::from(9))
}

/// 1 + 3p w: trivial mod 3p, acts on cbrt 3 by w.
pub fn rho_class(p: u64) -> CycloNumber {
    CycloNumber::from_ints(1, 3 * p as i64)
}

/// A class acting on cbrt p by w and fixing cbrt 3. For p = 4 mod 9 this is
/// 1 - 2p w^2; for p = 7 mod 9 that element moves cbrt 3, and the class used
/// is the conjugate of (1 - 2p w^2)(1 + 3p w).
pub fn sigma_class(p: u64) -> Result<CycloNumber> {
    check_prime_4_7(p)?;
    let pi = p as i64;
    let base = CycloNumber::from_ints(1 + 2 * pi, 2 * pi);
    Ok(if p % 9 == 4 { base } else { (&base * &rho_class(p)).conjugate() })
}

fn pair(p: u64, src: (i64, i64, i64), dst: (i64, i64), m: i64) -> Result<NormalizedIsogeny> {
    let pi = p as i64;
    let s = Lattice::from_tau(&CycloNumber::from_ratio(src.0, src.1 * pi, src.2))?;
    let d = Lattice::from_tau(&CycloNumber::from_ratio(dst.0, pi, dst.1))?;
    normalize_isogeny(&s, &d, &CycloNumber::from(m))
}

/// <(wp+6)/9> -> <(wp-10)/27>, the expected rho-image in case 2.
pub fn expected_rho_image(p: u64) -> Result<NormalizedIsogeny> {
    pair(p, (6, 1, 9), (-10, 27), 9)
}

/// The expected sigma-image for each case and residue of p mod 9.
pub fn expected_sigma_image(p: u64, case: Case) -> Result<NormalizedIsogeny> {
    check_prime_4_7(p)?;
    match (p % 9, case) {
        (4, Case::One) => pair(p, (4, 1, 9), (2, 27), 9),
        (4, Case::Two) => pair(p, (4, 1, 9), (-13, 27), 9),
        (_, Case::One) => pair(p, (0, 9, 1), (-1, 27), 1),
        (_, Case::Two) => pair(p, (0, 9, 1), (2, 27), 1),
    }
}

/// sigma(P) = w^a P + k (0, w) on E9.
pub fn expected_sigma_map(p: u64, case: Case) -> Result<AffineE9Map> {
    check_prime_4_7(p)?;
    Ok(match (p % 9, case) {
        (4, Case::One) => AffineE9Map::new(1, 2),
        (4, Case::Two) => AffineE9Map::new(2, 2),
        (_, Case::One) => AffineE9Map::new(1, 1),
        (_, Case::Two) => AffineE9Map::new(2, 1),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisVector {
    pub element: &'static str,
    pub p: u64,
    pub case: Case,
    pub image: CycloNumber,
    /// Whether the image matched the expected isogeny (None when no vector is known).
    pub image_matches: Option<bool>,
    pub word: ModWord,
    pub induced: AffineE9Map,
    pub expected_map: AffineE9Map,
}

impl GaloisVector {
    pub fn passed(&self) -> bool {
        self.image_matches != Some(false) && self.induced == self.expected_map
    }
}

fn vector(
    element: &'static str,
    p: u64,
    case: Case,
    image: NormalizedIsogeny,
    expected: Option<NormalizedIsogeny>,
    expected_map: AffineE9Map,
) -> Result<GaloisVector> {
    let base = base_point(p, case)?;
    let word = automorphism_search(&base, &image)?;
    let induced = induced_e9_action(&word)?;
    let image_matches = expected.map(|e| gamma0_equivalent(&image.tau, &e.tau, LEVEL).is_some());
    Ok(GaloisVector {
        element,
        p,
        case,
        image: image.tau,
        image_matches,
        word,
        induced,
        expected_map,
    })
}

/// The rho and sigma vectors for one prime and case: the Galois images, the
/// matrices realizing them, and the maps they induce on E9.
pub fn galois_vectors(p: u64, case: Case) -> Result<Vec<GaloisVector>> {
    let rho = galois_image(p, case, &rho_class(p))?;
    let rho_expected = match case {
        Case::Two => Some(expected_rho_image(p)?),
        Case::One => None,
    };
    let sigma = galois_image(p, case, &sigma_class(p)?)?;
    Ok(vec![
        vector("rho", p, case, rho, rho_expected, AffineE9Map::new(1, 0))?,
        vector("sigma", p, case, sigma, Some(expected_sigma_image(p, case)?), expected_sigma_map(p, case)?)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclofield::{chi3_class, CubeRootOfUnity};

    #[test]
    fn classes_fix_the_right_roots() {
        for p in [7, 13, 31, 43] {
            assert_eq!(chi3_class(&rho_class(p)).unwrap(), CubeRootOfUnity::Omega);
            let s = sigma_class(p).unwrap();
            assert_eq!(chi3_class(&s).unwrap(), CubeRootOfUnity::One, "p={p}");
        }
    }

    #[test]
    fn rho_and_sigma_vectors() {
        for p in [7, 13, 31, 43] {
            for case in Case::both() {
                for v in galois_vectors(p, case).unwrap() {
                    assert!(v.passed(), "p={p} case {case} {}: {:?}", v.element, v);
                }
            }
        }
    }
}
