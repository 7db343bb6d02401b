use k3pf::arith::{rf, IntPoly};
use k3pf::lattice::fixtures;
use k3pf::ode::*;
use k3pf::toric::FamilySpec;
use k3pf::{BigRational, Error, RationalFunction};
use num_traits::Zero;
use proptest::prelude::*;

fn octahedron_pencil_operator() -> DifferentialOperator {
    DifferentialOperator::parse(&[
        "1/(t*(t^2-64))",
        "(7*t^2-64)/(t^2*(t^2-64))",
        "6*(t^2-32)/(t*(t^2-64))",
        "1",
    ])
    .unwrap()
}

fn order_two() -> (RationalFunction, RationalFunction, RationalFunction) {
    (rf("t*(t^2-64)"), rf("2*t^2-64"), rf("t/4"))
}

#[test]
fn period_series_annihilated() {
    let s = principal_period_series(&FamilySpec::new(fixtures::edge_octahedron()), 20).unwrap();
    let rep = annihilates(&octahedron_pencil_operator(), &s).unwrap();
    assert!(rep.annihilates, "{rep:?}");
    assert_eq!(rep.checked, 20);
}

#[test]
fn sign_flip_detected() {
    let s = principal_period_series(&FamilySpec::new(fixtures::edge_octahedron()), 20).unwrap();
    let l = octahedron_pencil_operator();
    for j in 0..3 {
        let mut c = l.coeffs().to_vec();
        c[j] = -c[j].clone();
        let rep = annihilates(&DifferentialOperator::new(c).unwrap(), &s).unwrap();
        assert!(!rep.annihilates, "flipping coefficient {j}");
    }
}

#[test]
fn annihilation_monotone_in_truncation() {
    let l = DifferentialOperator::parse(&["1/(t*(t^2-64))", "(7*t^2-64)/(t^2*(t^2-64))", "6*(t^2-32)/(t*(t^2-64))", "-1"]).unwrap();
    let spec = FamilySpec::new(fixtures::edge_octahedron());
    let mut seen = false;
    for n in 4..16 {
        let rep = annihilates(&l, &principal_period_series(&spec, n).unwrap()).unwrap();
        if seen {
            assert!(!rep.annihilates);
        }
        seen |= !rep.annihilates;
    }
    assert!(seen);
}

#[test]
fn products_of_solutions_at_one() {
    let (a2, a1, a0) = order_two();
    let one = BigRational::from_integer(1.into());
    let (y1, y2) = local_series_solutions(&a2, &a1, &a0, &one, 30).unwrap();
    let l = symmetric_square(&a2, &a1, &a0).unwrap();
    for p in [y1.mul(&y1), y1.mul(&y2), y2.mul(&y2)] {
        let rep = annihilates_at(&l, &one, &p).unwrap();
        assert!(rep.annihilates);
        assert_eq!(rep.checked, 27);
    }
}

#[test]
fn singular_points_of_leading_coefficient() {
    let lc = &octahedron_pencil_operator().canonical()[3];
    // t^2 (t^2 - 64)
    assert_eq!(*lc, IntPoly::from_ints(&[0, 0, -64, 0, 1]));
    for r in [0i64, 8, -8] {
        assert!(lc.eval_rational(&BigRational::from_integer(r.into())).is_zero());
    }
    // poles of the normal form sit at the same finite points
    let (a2, a1, a0) = order_two();
    let q = projective_normal_form(&a2, &a1, &a0).unwrap();
    assert_eq!(q.den(), rf("4*t^2*(t^2-64)^2").num());
}

#[test]
fn non_square_by_brute_force() {
    // a1 = p2/3 = 0 forces a0 = p1/4 = 1/4, whose ω-coefficient is 0, not 1
    let l = DifferentialOperator::parse(&["1", "1", "0", "1"]).unwrap();
    assert_eq!(symmetric_square_root(&l), Err(Error::NotASymmetricSquare));
    let sq = symmetric_square(&rf("1"), &rf("0"), &rf("1/4")).unwrap();
    assert_eq!(sq.coeffs()[0], rf("0"));
}

fn small_poly() -> impl Strategy<Value = RationalFunction> {
    prop::collection::vec(-4i64..=4, 1..4).prop_map(|c| RationalFunction::from_poly(IntPoly::from_ints(&c)))
}

fn small_rf() -> impl Strategy<Value = RationalFunction> {
    (small_poly(), small_poly()).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Some(n.checked_div(&d).unwrap())
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn square_root_round_trip(a2 in small_rf(), a1 in small_rf(), a0 in small_rf()) {
        prop_assume!(!a2.is_zero());
        let l = symmetric_square(&a2, &a1, &a0).unwrap();
        let (b2, b1, b0) = symmetric_square_root(&l).unwrap();
        let back = symmetric_square(&b2, &b1, &b0).unwrap();
        prop_assert_eq!(back.canonical(), l.canonical());
        prop_assert!(DifferentialOperator::new(vec![a0, a1, a2]).unwrap()
            .same_class(&DifferentialOperator::new(vec![b0, b1, b2]).unwrap()));
    }

    #[test]
    fn normal_form_gauge_invariant(a2 in small_rf(), a1 in small_rf(), a0 in small_rf(), u in small_rf()) {
        prop_assume!(!a2.is_zero() && !u.is_zero());
        let q = projective_normal_form(&a2, &a1, &a0).unwrap();
        let qu = projective_normal_form(&(&a2 * &u), &(&a1 * &u), &(&a0 * &u)).unwrap();
        prop_assert_eq!(q, qu);
    }

    #[test]
    fn solution_products_at_random_points(num in -20i64..20, den in 1i64..5) {
        let (a2, a1, a0) = order_two();
        let x = BigRational::new(num.into(), den.into());
        prop_assume!(!a2.num().eval_rational(&x).is_zero());
        let (y1, y2) = local_series_solutions(&a2, &a1, &a0, &x, 12).unwrap();
        let l = symmetric_square(&a2, &a1, &a0).unwrap();
        prop_assert!(annihilates_at(&l, &x, &y1.mul(&y2)).unwrap().annihilates);
    }
}
