mod common;

use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use heegner_core::cyclofield::CycloNumber;
use heegner_core::ellcurve::{canonical_height, CurveModel, CurvePoint};
use heegner_core::etaeval::{BigComplex, PrecisionContext};
use heegner_core::heegner::{recognize_k, recognize_rational};
use heegner_core::lseries::{a_ell, coefficients};
use heegner_core::modcurve::reduce_sl2;

fn k_elem() -> impl Strategy<Value = CycloNumber> {
    (-50i64..50, -50i64..50, 1i64..30).prop_map(|(a, b, d)| CycloNumber::from_ratio(a, b, d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_law_on_exact_models(g in 0usize..4, a in -5i64..=5, b in -5i64..=5, c in -5i64..=5) {
        let gens = common::generators();
        common::group_law_exact(&gens[g], a, b, c)?;
    }

    #[test]
    fn group_law_on_e9_over_c(pts in common::complex_points()) {
        common::group_law_complex(pts)?;
    }

    #[test]
    fn field_axioms(x in k_elem(), y in k_elem(), z in k_elem()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
    }

    #[test]
    fn display_round_trips(x in k_elem()) {
        prop_assert_eq!(x.to_string().parse::<CycloNumber>().unwrap(), x);
    }

    #[test]
    fn sl2_reduction_lands_in_fundamental_domain(x in k_elem()) {
        prop_assume!(x.b().cmp0().is_gt());
        let (t, g) = reduce_sl2(&x).unwrap();
        prop_assert_eq!(g.det(), 1);
        prop_assert_eq!(g.act(&x).unwrap(), t.clone());
        prop_assert!(t.norm() >= 1);
        let re = t.re();
        prop_assert!(re >= (-1, 2) && re <= (1, 2));
    }

    #[test]
    fn recognition_inverts_embedding(x in k_elem()) {
        let ctx = PrecisionContext::new(60);
        prop_assert_eq!(recognize_k(&BigComplex::from_cyclo(&x, ctx)), Some(x));
    }

    #[test]
    fn recognition_rejects_perturbed_values(num in 1i64..1000, den in 1i64..1000) {
        let ctx = PrecisionContext::new(90);
        let x = ctx.rational(&Rational::from((num, den))) + ctx.ten_pow_neg(60);
        let bound = Integer::from(10).pow(30);
        let r = recognize_rational(&x, &bound, &ctx.ten_pow_neg(75));
        prop_assert!(r.is_none());
    }

    #[test]
    fn model_changes_round_trip(g in 0usize..4, m in -4i64..=4) {
        let p = common::generators()[g].mul(m).unwrap();
        let n = p.model.short_n();
        for target in [CurveModel::ShortW(n), CurveModel::EtaModel(n), CurveModel::Fermat(n)] {
            let there = p.transport(target).unwrap();
            prop_assert_eq!(there.transport(p.model).unwrap(), p.clone());
        }
    }

    #[test]
    fn canonical_height_is_quadratic(g in 0usize..4, m in 1i64..=4) {
        let p = &common::generators()[g];
        let h = canonical_height(p).unwrap();
        let hm = canonical_height(&p.mul(m).unwrap()).unwrap();
        prop_assert!((hm - (m * m) as f64 * h).abs() < 1e-8 * (1.0 + hm));
        prop_assert!(h > 0.0);
    }

    #[test]
    fn omega_endomorphism_has_order_three(g in 0usize..4) {
        let p = common::generators()[g].to_k();
        prop_assume!(p.model != CurveModel::Fermat(7));
        let w3 = p.omega_map().unwrap().omega_map().unwrap().omega_map().unwrap();
        prop_assert_eq!(&w3, &p);
        // 1 + w + w^2 = 0
        let s = p.add(&p.omega_map().unwrap()).unwrap().add(&p.omega_map().unwrap().omega_map().unwrap()).unwrap();
        prop_assert!(s.is_infinity());
    }

    #[test]
    fn hasse_bound(n in 1u64..200, l in 5u64..400) {
        prop_assume!(heegner_core::cyclofield::is_prime(l));
        let a = a_ell(n, l);
        prop_assert!((a * a) as u64 <= 4 * l);
    }

    #[test]
    fn coefficients_are_multiplicative(m in 2usize..60, k in 2usize..60) {
        prop_assume!(Integer::from(m).gcd(&Integer::from(k)) == 1);
        let a = coefficients(21, m * k);
        prop_assert_eq!(a[m * k], a[m] * a[k]);
    }

    #[test]
    fn homothety_invariance(p in 0usize..4, l in 0usize..6, r in 0usize..9,
                            la in -6i64..6, lb in -6i64..6, ld in 1i64..5) {
        common::homothety_invariance(p, l, r, la, lb, ld)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eta_transformation_laws(x in -1.0f64..1.0, y in 0.2f64..3.0) {
        common::eta_transformations(x, y)?;
    }

    #[test]
    fn analytic_outputs_survive_precision_doubling((a, b, d) in common::cm_points()) {
        common::precision_doubling(a, b, d)?;
    }
}

#[test]
fn tree_conductor_labels() {
    for p in [7, 13, 31, 43] {
        common::tree_labels(p).unwrap();
    }
}

#[test]
fn l_value_survives_precision_doubling() {
    use heegner_core::lseries::{l_value, ConductorTable};
    let t = ConductorTable::embedded();
    for n in [21u64, 147] {
        let lo = l_value(n, t.get(n).unwrap(), 15).unwrap();
        let hi = l_value(n, t.get(n).unwrap(), 30).unwrap();
        assert!(Float::with_val(64, &lo.exact - &hi.exact).abs() < 1e-14, "n={n}");
    }
}

#[test]
fn construction_is_deterministic() {
    use heegner_core::heegner::{construct, ConstructOptions};
    use heegner_core::Case;
    let a = construct(13, Case::Two, &ConstructOptions::default()).unwrap().to_json();
    let b = construct(13, Case::Two, &ConstructOptions::default()).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn point_from_trace_is_on_fermat_curve() {
    use heegner_core::heegner::{construct, ConstructOptions};
    use heegner_core::Case;
    for case in Case::both() {
        let r = construct(7, case, &ConstructOptions::default()).unwrap();
        let w: CurvePoint<Rational> = r.w.unwrap();
        assert!(w.residual().unwrap().cmp0().is_eq());
    }
}
