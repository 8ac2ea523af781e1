//! The construction of rational points on x^3 + y^3 = p and p^2.
//!
//! A CM point of conductor 9p on X0(243) is mapped to y^2 + y = x^3 - 1,
//! twisted down by cbrt 3, traced over the Galois orbit fixing
//! K(cbrt 3, cbrt p), translated by a 3-torsion point, twisted by cbrt p or
//! cbrt p^2, recognized as a point over K and finally traced to Q.

mod certificate;
mod construct;
mod galois;
mod recognize;
mod reproduce;
mod table;
mod trace;
mod tree;

pub use certificate::{certificate, predicted_shapes, Certificate};
pub use construct::{construct, descend, ConstructOptions, ConstructionReport, Descent, Verdict, WBranch};
pub use galois::{
    expected_rho_image, expected_sigma_image, expected_sigma_map, galois_image, galois_vectors, rho_class,
    sigma_class, GaloisVector,
};
pub use recognize::{recognize_k, recognize_rational};
pub use reproduce::{reproduce_row, Cell, ReproduceOptions, RowReport, Status};
pub use table::{compare_with_table, table_row, TablePoint, TableRow, TableMatch, TABLE};
pub use trace::{trace_point, TraceOutput};
pub use tree::{homothetic, is_three_isogeny, isogeny_tree, locate, tree_conductors, Quadrant, TreeVertex};

use crate::cyclofield::{check_prime_4_7, trace_subgroup_reps, CycloNumber, Lattice};
use crate::error::{Error, Result};
use crate::modcurve::{normalize_isogeny, NormalizedIsogeny};
use crate::Case;

/// <1, wp/9> and <1, (wp + 23)/27> (case 1) or <1, (wp + 26)/27> (case 2).
pub fn base_lattices(p: u64, case: Case) -> Result<(Lattice, Lattice)> {
    check_prime_4_7(p)?;
    let shift = match case {
        Case::One => 23,
        Case::Two => 26,
    };
    let src = Lattice::from_tau(&CycloNumber::from_ratio(0, p as i64, 9))?;
    let dst = Lattice::from_tau(&CycloNumber::from_ratio(shift, p as i64, 27))?;
    Ok((src, dst))
}

/// The starting point of conductor 9p, given by z -> 9z between the base lattices.
pub fn base_point(p: u64, case: Case) -> Result<NormalizedIsogeny> {
    let (src, dst) = base_lattices(p, case)?;
    let n = normalize_isogeny(&src, &dst, &CycloNumber::from(9))?;
    if n.conductor != 9 * p {
        return Err(Error::Consistency(format!("base point has conductor {}, expected {}", n.conductor, 9 * p)));
    }
    Ok(n)
}

/// The (p - 1)/3 conjugates of the base point over K(cbrt 3, cbrt p).
pub fn conjugate_points(p: u64, case: Case) -> Result<Vec<NormalizedIsogeny>> {
    let (src, dst) = base_lattices(p, case)?;
    let reps = trace_subgroup_reps(p)?;
    let mut out = Vec::with_capacity(reps.len());
    for r in &reps {
        let n = galois::act_on_pair(&src, &dst, &r.alpha, 9 * p)?;
        if n.conductor != 9 * p {
            return Err(Error::Consistency(format!("conjugate has conductor {}, expected {}", n.conductor, 9 * p)));
        }
        out.push(n);
    }
    Ok(out)
}
