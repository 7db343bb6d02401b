use k3pf::lattice::{fixtures, LatticePolytope};
use k3pf::toric::{anticanonical_exponent, build_family, CoxGrading, FamilySpec, GroupChoice};

fn reflexive_fixtures() -> Vec<LatticePolytope> {
    vec![
        fixtures::octahedron(),
        fixtures::cube(),
        fixtures::edge_octahedron(),
        fixtures::fourteen_vertex(),
        fixtures::simplex(),
        fixtures::square(),
        fixtures::diamond(),
    ]
}

#[test]
fn anticanonical_degree_bookkeeping() {
    for p in reflexive_fixtures() {
        let g = CoxGrading::from_polytope(&p).unwrap();
        let beta = g.anticanonical();
        assert_eq!(g.degree(&vec![1; g.nvars()]), beta);
        let dual_points = p.polar_dual().unwrap().lattice_points();
        for x in &dual_points {
            assert_eq!(g.degree(&anticanonical_exponent(&g, x)), beta);
        }
        // one anticanonical monomial per dual lattice point
        assert_eq!(g.monomials_of_degree(&beta).unwrap().len(), dual_points.len());
    }
}

#[test]
fn pairing_vectors_have_degree_zero() {
    for p in reflexive_fixtures() {
        let g = CoxGrading::from_polytope(&p).unwrap();
        for i in 0..p.dim() {
            let mut x = vec![0; p.dim()];
            x[i] = 1;
            let a: Vec<i64> = g.rays().iter().map(|v| v[i]).collect();
            assert_eq!(g.degree_of(&a), g.zero_degree(), "{x:?}");
        }
        assert_eq!(g.free_rank(), g.nvars() - p.dim());
    }
}

#[test]
fn pencils_are_fixed_by_their_groups() {
    for p in reflexive_fixtures() {
        for choice in [GroupChoice::OrientationPreserving, GroupChoice::All] {
            let mut spec = FamilySpec::new(p.clone());
            spec.group = choice;
            let fam = build_family(&spec).unwrap();
            for perm in &fam.ray_permutations {
                assert_eq!(fam.f.permute(perm), fam.f);
            }
        }
    }
}
