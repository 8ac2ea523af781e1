use rayon::prelude::*;
use rug::Float;

use super::conjugate_points;
use crate::cyclofield::CycloNumber;
use crate::ellcurve::{CurveModel, CurvePoint};
use crate::error::{Error, Result};
use crate::etaeval::{phi_point, BigComplex, PrecisionContext, UhpPoint};
use crate::Case;

/// The trace R on y^2 + y = 3x^3 - 1 with the data it was summed from.
#[derive(Clone, Debug)]
pub struct TraceOutput {
    pub r: CurvePoint<BigComplex>,
    /// The conjugate CM points in summation order.
    pub taus: Vec<CycloNumber>,
    /// Largest relative on-curve residual of the summands on y^2 + y = x^3 - 1.
    pub max_residual: Float,
}

fn cbrt3(ctx: PrecisionContext) -> BigComplex {
    BigComplex::from_real(Float::with_val(ctx.bits(), 3).cbrt(), ctx)
}

/// Phi(tau) twisted down by cbrt 3: a point of y^2 + y = 3x^3 - 1.
fn twisted_summand(tau: &CycloNumber, ctx: PrecisionContext) -> Result<(CurvePoint<BigComplex>, Float)> {
    let v = phi_point(&UhpPoint::from_exact(tau, ctx)?, ctx)?;
    // relative to the size of the terms of y^2 + y = x^3 - 1
    let size = Float::with_val(ctx.bits(), v.x.abs().square() * v.x.abs()) + v.y.abs().square() + 1u32;
    let res = v.residual() / size;
    let q = CurvePoint::new(CurveModel::E9, v.x, v.y)?;
    Ok((q.cubic_twist(3, &cbrt3(ctx))?, res))
}

/// R = sum of the twisted images of the (p - 1)/3 conjugate CM points.
///
/// The summands are evaluated in parallel and added in order of their
/// normalized tau, so the result does not depend on scheduling.
pub fn trace_point(p: u64, case: Case, ctx: PrecisionContext) -> Result<TraceOutput> {
    let mut taus: Vec<CycloNumber> = conjugate_points(p, case)?.into_iter().map(|n| n.tau).collect();
    taus.sort();
    for t in &taus {
        // CM points are never cusps; a real tau would mean a broken normalization
        if t.b().cmp0().is_le() {
            return Err(Error::Consistency(format!("conjugate {t} is not in the upper half plane")));
        }
    }
    let summands: Vec<(CurvePoint<BigComplex>, Float)> =
        taus.par_iter().map(|t| twisted_summand(t, ctx)).collect::<Result<_>>()?;
    let budget = ctx.tolerance();
    let mut max_residual = Float::with_val(ctx.bits(), 0);
    let mut r = CurvePoint::infinity(CurveModel::EtaModel(1));
    for (q, res) in &summands {
        if res > &budget {
            return Err(Error::Precision(format!("summand off the curve by 10^{:.1}", res.clone().log10().to_f64())));
        }
        if *res > max_residual {
            max_residual = res.clone();
        }
        r = r.add(q)?;
    }
    Ok(TraceOutput { r, taus, max_residual })
}
