use k3pf::arith::{rf, IntPoly};
use k3pf::gd::*;
use k3pf::lattice::fixtures;
use k3pf::ode::DifferentialOperator;
use k3pf::toric::{build_family, FamilySpec, GradedPoly, GroupChoice};
use k3pf::{Error, RationalFunction};
use proptest::prelude::*;

fn edge_octahedron_operator() -> DifferentialOperator {
    DifferentialOperator::new(vec![rf("t"), rf("7*t^2-64"), rf("6*t^3-192*t"), rf("t^4-64*t^2")]).unwrap()
}

fn canonical_strings(l: &DifferentialOperator) -> Vec<String> {
    l.canonical().iter().map(IntPoly::to_string).collect()
}

#[test]
fn edge_octahedron_operator_with_symmetry() {
    let r = picard_fuchs(&FamilySpec::new(fixtures::edge_octahedron()), &PicardFuchsOptions::default()).unwrap();
    assert!(r.symmetric);
    assert_eq!(r.order, 3);
    assert_eq!(
        canonical_strings(&r.operator),
        ["t", "7*t^2-64", "6*t^3-192*t", "t^4-64*t^2"]
    );
    assert!(r.operator.same_class(&edge_octahedron_operator()));
    assert!(r.oracle.unwrap().annihilates);
}

#[test]
fn edge_octahedron_without_symmetry_agrees() {
    let opts = PicardFuchsOptions {
        use_symmetry: false,
        ..Default::default()
    };
    let r = picard_fuchs(&FamilySpec::new(fixtures::edge_octahedron()), &opts).unwrap();
    assert!(!r.symmetric);
    assert!(r.operator.same_class(&edge_octahedron_operator()));
}

#[test]
fn shifted_ideal_gives_the_same_operator() {
    let opts = PicardFuchsOptions {
        use_j1: true,
        ..Default::default()
    };
    let r = picard_fuchs(&FamilySpec::new(fixtures::edge_octahedron()), &opts).unwrap();
    assert!(r.operator.same_class(&edge_octahedron_operator()));
}

#[test]
fn cube_family_third_order() {
    let r = picard_fuchs(&FamilySpec::new(fixtures::cube()), &PicardFuchsOptions::default()).unwrap();
    assert_eq!(r.order, 3);
    let rep = r.oracle.unwrap();
    assert!(rep.annihilates);
    assert_eq!(rep.checked, 20);
}

#[test]
fn trivial_group_matches_symmetric_run() {
    let mut spec = FamilySpec::new(fixtures::cube());
    spec.group = GroupChoice::Trivial;
    let r = picard_fuchs(&spec, &PicardFuchsOptions::default()).unwrap();
    let s = picard_fuchs(&FamilySpec::new(fixtures::cube()), &PicardFuchsOptions::default()).unwrap();
    assert!(r.operator.same_class(&s.operator));
}

#[test]
fn runs_are_deterministic() {
    let spec = FamilySpec::new(fixtures::edge_octahedron());
    let a = picard_fuchs(&spec, &PicardFuchsOptions::default()).unwrap();
    let b = picard_fuchs(&spec, &PicardFuchsOptions::default()).unwrap();
    assert_eq!(a.operator.canonical(), b.operator.canonical());
    assert_eq!(a.basis, b.basis);
}

#[test]
fn cubed_product_in_jacobian_ideal() {
    let fam = build_family(&FamilySpec::new(fixtures::edge_octahedron())).unwrap();
    let g = &fam.grading;
    let k = GradedPoly::monomial(g, vec![3; 18], RationalFunction::from(1));
    let w = ideal_membership(&k, &fam, false, true).unwrap();
    assert!(w.verify(&fam.f, g));
    assert!(w.residual.is_empty());
    for (i, a) in w.cofactors.iter().enumerate() {
        assert_eq!(a.degree(), &g.sub(k.degree(), &g.sub(&g.anticanonical(), &g.ray_degree(i))));
    }
}

#[test]
fn cubed_product_form_reduces_at_its_pole() {
    let fam = build_family(&FamilySpec::new(fixtures::edge_octahedron())).unwrap();
    let g = &fam.grading;
    let mut eng = Engine::new(&fam, true, false).unwrap();
    let mut form = RationalForm::new();
    form.add(4, GradedPoly::monomial(g, vec![3; 18], RationalFunction::from(1)), g).unwrap();
    let r = reduce_pole_order(&form, &mut eng).unwrap();
    assert!(!r.levels.contains_key(&4));
    assert!(!r.is_zero());
    for (&l, p) in &r.levels {
        assert_eq!(p.degree(), &g.scale(&g.anticanonical(), l as i64 - 1));
    }
}

#[test]
fn trace_witnesses_reexpand() {
    let opts = PicardFuchsOptions {
        trace: true,
        ..Default::default()
    };
    let fam = build_family(&FamilySpec::new(fixtures::edge_octahedron())).unwrap();
    let r = picard_fuchs_for(&fam, &opts).unwrap();
    assert!(r.trace.len() >= 3);
    assert!(r.trace.iter().all(|s| s.witness.verify(&fam.f, &fam.grading)));
}

#[test]
fn non_invariant_numerator_rejected_by_symmetric_engine() {
    let fam = build_family(&FamilySpec::new(fixtures::edge_octahedron())).unwrap();
    let mut eng = Engine::new(&fam, true, false).unwrap();
    let k = fam.f.partial(0, &fam.grading);
    let mut e = vec![0; 18];
    e[0] = 1;
    let mut form = RationalForm::new();
    form.add(2, k.mul_monomial(&e, &fam.grading), &fam.grading).unwrap();
    assert!(matches!(reduce_pole_order(&form, &mut eng), Err(Error::NotInvariant(_))));
}

fn square_family() -> k3pf::toric::Family {
    build_family(&FamilySpec::new(fixtures::square())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // K built from random cofactors always gets a witness that re-expands
    #[test]
    fn constructed_members_have_witnesses(coefs in proptest::collection::vec(-3i64..=3, 8)) {
        let fam = square_family();
        let g = &fam.grading;
        let q = g.nvars();
        let mut k = GradedPoly::zero(q, g.anticanonical());
        for (i, c) in coefs.iter().enumerate() {
            let mut e = vec![0; q];
            e[i] = 1;
            let term = fam.f.partial(i, g).mul_monomial(&e, g).scale(&RationalFunction::from(*c));
            k.add_assign(&term);
        }
        prop_assume!(!k.is_empty());
        let w = ideal_membership(&k, &fam, false, false).unwrap();
        prop_assert!(w.verify(&fam.f, g));
    }
}
