//! The tree of 3-isogenies around C/<1, wp> used to choose the starting points.

use serde::Serialize;

use crate::cyclofield::{conductor_of_lattice, CycloNumber, Lattice};
use crate::error::Result;
use crate::modcurve::reduce_sl2;

/// Position of a vertex relative to the centre <wp>.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Quadrant {
    Centre,
    /// The branches through <wp/3> and <3wp>.
    Left,
    /// The branch through <(wp+1)/3>.
    UpperRight,
    /// The branch through <(wp+2)/3>, whose curves have smaller conductor.
    LowerRight,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeVertex {
    pub label: String,
    pub tau: CycloNumber,
    /// Expected conductor as a multiple of p: 1, 3 or 9.
    pub conductor_factor: u64,
    pub quadrant: Quadrant,
    /// Index of the neighbour one step closer to the centre.
    pub parent: Option<usize>,
}

impl TreeVertex {
    pub fn lattice(&self) -> Lattice {
        Lattice::from_tau(&self.tau).expect("tree vertices lie in the upper half plane")
    }
}

/// (a w p + b) / d
fn t(p: u64, a: i64, b: i64, d: i64) -> CycloNumber {
    CycloNumber::from_ratio(b, a * p as i64, d)
}

/// The vertices of the tree for p = 1 mod 3 (nine of the depth-3 vertices in
/// the lower-right quadrant, the ones with numerators wp + k, k = 2 mod 3).
pub fn isogeny_tree(p: u64) -> Vec<TreeVertex> {
    let mut v: Vec<TreeVertex> = Vec::new();
    let mut push = |label: String, tau: CycloNumber, f: u64, q: Quadrant, parent: Option<usize>| {
        v.push(TreeVertex { label, tau, conductor_factor: f, quadrant: q, parent });
        v.len() - 1
    };
    let centre = push("wp".into(), t(p, 1, 0, 1), 1, Quadrant::Centre, None);
    let a = push("wp/3".into(), t(p, 1, 0, 3), 3, Quadrant::Left, Some(centre));
    for k in [6, 3, 0] {
        push(format!("(wp+{k})/9"), t(p, 1, k, 9), 9, Quadrant::Left, Some(a));
    }
    let b = push("3wp".into(), t(p, 3, 0, 1), 3, Quadrant::Left, Some(centre));
    for (label, tau) in [
        ("(3wp+1)/3", t(p, 3, 1, 3)),
        ("(3wp+2)/3", t(p, 3, 2, 3)),
        ("9wp", t(p, 9, 0, 1)),
    ] {
        push(label.into(), tau, 9, Quadrant::Left, Some(b));
    }
    let c = push("(wp+1)/3".into(), t(p, 1, 1, 3), 3, Quadrant::UpperRight, Some(centre));
    for k in [1, 4, 7] {
        push(format!("(wp+{k})/9"), t(p, 1, k, 9), 9, Quadrant::UpperRight, Some(c));
    }
    let d = push("(wp+2)/3".into(), t(p, 1, 2, 3), 1, Quadrant::LowerRight, Some(centre));
    for k in [2, 5, 8] {
        let child = push(format!("(wp+{k})/9"), t(p, 1, k, 9), 3, Quadrant::LowerRight, Some(d));
        for j in 0..3 {
            let i = k + 9 * j;
            push(format!("(wp+{i})/27"), t(p, 1, i, 27), 9, Quadrant::LowerRight, Some(child));
        }
    }
    v
}

/// Whether the two lattices are related by an isogeny of degree 3 with one
/// contained in the other (as <1, tau> lattices).
pub fn is_three_isogeny(a: &Lattice, b: &Lattice) -> bool {
    let idx = |big: &Lattice, small: &Lattice| big.contains_lattice(small) && big.index_of(small).is_ok_and(|i| i == 3);
    idx(a, b) || idx(b, a)
}

/// Homothety test: C/L1 and C/L2 are isomorphic iff their taus are SL2(Z)-equivalent.
pub fn homothetic(a: &Lattice, b: &Lattice) -> Result<bool> {
    Ok(reduce_sl2(&a.tau())?.0 == reduce_sl2(&b.tau())?.0)
}

/// The tree vertex isomorphic to C/L, if any.
pub fn locate<'a>(tree: &'a [TreeVertex], l: &Lattice) -> Result<Option<&'a TreeVertex>> {
    for v in tree {
        if homothetic(&v.lattice(), l)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// The measured conductor of every vertex next to its expected value.
pub fn tree_conductors(p: u64) -> Vec<(String, u64, u64)> {
    isogeny_tree(p)
        .iter()
        .map(|v| (v.label.clone(), conductor_of_lattice(&v.lattice()), v.conductor_factor * p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcurve::{isogeny_multiplier, normalize_isogeny};

    #[test]
    fn conductors_match_labels() {
        for p in [7, 13, 31, 43] {
            for (label, got, want) in tree_conductors(p) {
                assert_eq!(got, want, "p={p} {label}");
            }
        }
    }

    #[test]
    fn edges_are_three_isogenies() {
        let tree = isogeny_tree(7);
        assert_eq!(tree.len(), 1 + 4 + 12 + 9);
        for v in &tree {
            if let Some(par) = v.parent {
                assert!(is_three_isogeny(&v.lattice(), &tree[par].lattice()), "{}", v.label);
            }
        }
    }

    #[test]
    fn misprinted_vertex_has_wrong_conductor() {
        // a numerator wp + 18 would give conductor 27p, so the depth-3 vertex is wp + 20
        let l = Lattice::from_tau(&t(7, 1, 18, 27)).unwrap();
        assert_eq!(conductor_of_lattice(&l), 27 * 7);
    }

    #[test]
    fn left_to_lower_right_paths_have_conductor_9p() {
        for p in [7u64, 13] {
            let tree = isogeny_tree(p);
            let lefts: Vec<_> = tree.iter().filter(|v| v.quadrant == Quadrant::Left && v.conductor_factor == 9).collect();
            let rights: Vec<_> = tree.iter().filter(|v| v.label.ends_with("/27")).collect();
            assert_eq!((lefts.len(), rights.len()), (6, 9));
            for l in &lefts {
                for r in &rights {
                    let (src, dst) = (l.lattice(), r.lattice());
                    let m = isogeny_multiplier(&src, &dst).unwrap();
                    let n = normalize_isogeny(&src, &dst, &CycloNumber::from(m)).unwrap();
                    assert_eq!(n.conductor, 9 * p, "{} -> {}", l.label, r.label);
                }
            }
        }
    }
}
