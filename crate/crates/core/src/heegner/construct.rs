use std::collections::BTreeMap;
use std::time::Instant;

use rug::{Float, Rational};
use serde::Serialize;

use super::certificate::{certificate, Certificate};
use super::recognize::recognize_k;
use super::trace::trace_point;
use super::{base_point, conjugate_points};
use crate::cyclofield::{check_prime_4_7, CycloNumber};
use crate::ellcurve::{canonical_height, torsion_list, CurveModel, CurvePoint, TorsionField};
use crate::error::{Error, Result};
use crate::etaeval::{BigComplex, PrecisionContext};
use crate::Case;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Nontorsion,
    Torsion,
}

/// Which trace to Q produced W.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WBranch {
    /// W = Z + conj(Z)
    #[serde(rename = "z+conj(z)")]
    Plain,
    /// W = [1 + 2w]Z + conj([1 + 2w]Z)
    #[serde(rename = "sqrt(-3)z+conj(sqrt(-3)z)")]
    SqrtMinus3,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructOptions {
    /// Starting precision; defaults to max(120, 8p).
    pub digits: Option<u32>,
    /// Highest precision tried; defaults to twice the starting precision.
    pub max_digits: Option<u32>,
    pub guard: u32,
    /// Record wall-clock timings per stage (makes reports non-reproducible).
    pub timings: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions { digits: None, max_digits: None, guard: PrecisionContext::DEFAULT_GUARD, timings: false }
    }
}

impl ConstructOptions {
    pub fn start_digits(&self, p: u64) -> u32 {
        self.digits.unwrap_or_else(|| std::cmp::max(120, 8 * p as u32))
    }
}

/// The exact outcome of the descent from R.
#[derive(Clone, Debug, PartialEq)]
pub struct Descent {
    /// Z on y^2 + y = 3 p^case x^3 - 1 over K.
    pub z: CurvePoint<CycloNumber>,
    pub verdict: Verdict,
    pub w_branch: Option<WBranch>,
    /// W on x^3 + y^3 = p^case.
    pub w: Option<CurvePoint<Rational>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct XY {
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub p: u64,
    pub case: Case,
    pub conjugates: usize,
    pub digits: u32,
    pub verdict: Verdict,
    pub z: CurvePoint<CycloNumber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_branch: Option<WBranch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<XY>,
    /// (X : Y : Z) in coprime integers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fermat_projective: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<f64>,
    pub model: &'static str,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, u64>>,
    #[serde(skip)]
    pub w: Option<CurvePoint<Rational>>,
}

impl ConstructionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Z = (R - T) twisted by the cube root of p^case.
fn twist_down(p: u64, case: Case, r: &CurvePoint<BigComplex>) -> Result<CurvePoint<BigComplex>> {
    let ctx = match &r.xy {
        Some((x, _)) => x.ctx(),
        None => return Ok(CurvePoint::infinity(CurveModel::EtaModel(p.pow(case.number())))),
    };
    let ty = match case {
        Case::One => -2.0,
        Case::Two => 1.0,
    };
    let t = CurvePoint::new_unchecked(
        CurveModel::EtaModel(1),
        Some((BigComplex::from_f64(1.0, 0.0, ctx), BigComplex::from_f64(ty, 0.0, ctx))),
    );
    let y = r.sub(&t)?;
    let n = p.pow(case.number());
    let cbrt = BigComplex::from_real(Float::with_val(ctx.bits(), n).cbrt(), ctx);
    y.cubic_twist(n, &cbrt)
}

fn recognize_point(z: &CurvePoint<BigComplex>) -> Option<Option<(CycloNumber, CycloNumber)>> {
    match &z.xy {
        None => Some(None),
        Some((x, y)) => Some(Some((recognize_k(x)?, recognize_k(y)?))),
    }
}

fn is_torsion(pt: &CurvePoint<CycloNumber>) -> Result<bool> {
    Ok(torsion_list(pt.model, TorsionField::K)?.contains(pt))
}

/// The exact part of the descent: verify Z, decide torsion, and trace to Q.
pub fn descend(p: u64, case: Case, z: Option<(CycloNumber, CycloNumber)>) -> Result<Descent> {
    let n = p.pow(case.number());
    let model = CurveModel::EtaModel(n);
    let z = match z {
        None => CurvePoint::infinity(model),
        Some((x, y)) => CurvePoint::new(model, x, y)
            .map_err(|_| Error::Consistency(format!("recognized point is not on {model}")))?,
    };
    if is_torsion(&z)? {
        return Ok(Descent { z, verdict: Verdict::Torsion, w_branch: None, w: None });
    }
    let mut branch = WBranch::Plain;
    let mut w = z.add(&z.conjugate())?;
    if is_torsion(&w)? {
        branch = WBranch::SqrtMinus3;
        let s = z.mul_endo(&CycloNumber::from_ints(1, 2))?;
        w = s.add(&s.conjugate())?;
        if is_torsion(&w)? {
            return Err(Error::Consistency("both traces of a nontorsion point are torsion".into()));
        }
    }
    let w = w
        .to_rational()
        .ok_or_else(|| Error::Consistency(format!("trace {w} is not rational")))?;
    let fermat = w.transport(CurveModel::Fermat(n))?;
    let (x, y) = fermat.xy.clone().ok_or_else(|| Error::Consistency("trace is the identity".into()))?;
    let check = CurvePoint::new(CurveModel::Fermat(n), x, y)
        .map_err(|_| Error::Consistency(format!("x^3 + y^3 != {n} for the descended point")))?;
    Ok(Descent { z, verdict: Verdict::Nontorsion, w_branch: Some(branch), w: Some(check) })
}

fn tagged<T>(stage: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| e.at_stage(stage))
}

/// The whole construction for one prime and case. Reports are deterministic
/// in (p, case, options) unless timings are requested.
pub fn construct(p: u64, case: Case, opts: &ConstructOptions) -> Result<ConstructionReport> {
    tagged("input", check_prime_4_7(p))?;
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut BTreeMap<&'static str, u64>| {
        timings.insert(name, clock.elapsed().as_millis() as u64);
        clock = Instant::now();
    };
    tagged("base_point", base_point(p, case))?;
    let conjugates = tagged("conjugate_points", conjugate_points(p, case))?.len();
    lap("setup", &mut timings);

    let start = opts.start_digits(p);
    let cap = opts.max_digits.unwrap_or(2 * start).max(start);
    let mut digits = start;
    let mut failures = Vec::new();
    let (z, digits) = loop {
        let ctx = PrecisionContext::with_guard(digits, opts.guard);
        let check_ctx = PrecisionContext::with_guard(digits + digits.div_ceil(2), opts.guard);
        let r = tagged("trace_point", trace_point(p, case, ctx))?;
        let r_check = tagged("trace_point", trace_point(p, case, check_ctx))?;
        let z = tagged("descend", twist_down(p, case, &r.r))?;
        let z_check = tagged("descend", twist_down(p, case, &r_check.r))?;
        match (recognize_point(&z), recognize_point(&z_check)) {
            (Some(a), Some(b)) if a == b => break (a, digits),
            (Some(_), Some(_)) => failures.push(format!("unstable at {digits} digits")),
            _ => failures.push(format!("no recognition at {digits} digits")),
        }
        if digits * 2 > cap {
            return Err(Error::Precision(failures.join("; ")).at_stage("descend"));
        }
        digits *= 2;
    };
    lap("trace", &mut timings);
    let d = tagged("descend", descend(p, case, z))?;
    let height = match &d.w {
        Some(w) => Some(tagged("descend", canonical_height(w))?),
        None => None,
    };
    lap("descend", &mut timings);
    let cert = tagged("certificate", certificate(p))?;
    let point = d.w.as_ref().and_then(|w| w.xy.as_ref()).map(|(x, y)| XY { x: x.to_string(), y: y.to_string() });
    let fermat_projective = d
        .w
        .as_ref()
        .and_then(|w| w.fermat_projective())
        .map(|(x, y, z)| [x.to_string(), y.to_string(), z.to_string()]);
    Ok(ConstructionReport {
        p,
        case,
        conjugates,
        digits,
        verdict: d.verdict,
        z: d.z,
        w_branch: d.w_branch,
        point,
        fermat_projective,
        height,
        model: "fermat",
        certificate: cert,
        timings_ms: opts.timings.then_some(timings),
        w: d.w,
    })
}
