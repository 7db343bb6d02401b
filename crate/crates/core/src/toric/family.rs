//! The symmetric one-parameter anticanonical pencil of a reflexive polytope.

use serde::{Deserialize, Serialize};

use super::graded::GradedPolynomial;
use super::grading::{CoxGrading, Exponent};
use crate::arith::RationalFunction;
use crate::error::{Error, Result};
use crate::lattice::group::permutation;
use crate::lattice::linalg::dot;
use crate::lattice::{automorphism_group, dual_group, orbits, LatticeAutomorphism, LatticePolytope, OrbitPartition};

/// Which lattice automorphisms of the polytope act on the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupChoice {
    #[serde(rename = "auto-orientation-preserving")]
    OrientationPreserving,
    #[serde(rename = "auto-all")]
    All,
    #[serde(rename = "trivial")]
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parameter {
    /// `t` multiplies `z_1 ⋯ z_q`, every orbit sum has coefficient one.
    #[serde(rename = "t-on-product-term")]
    TOnProductTerm,
}

/// Input description of a family, as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub polytope: LatticePolytope,
    pub group: GroupChoice,
    pub parameter: Parameter,
    /// Optional coefficient per orbit of nonzero dual lattice points, in orbit
    /// order. Defaults to one on every orbit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<RationalFunction>>,
}

impl FamilySpec {
    pub fn new(polytope: LatticePolytope) -> Self {
        FamilySpec {
            polytope,
            group: GroupChoice::OrientationPreserving,
            parameter: Parameter::TOnProductTerm,
            coefficients: None,
        }
    }
}

/// A built family: the grading, the acting group and the pencil `f`.
#[derive(Clone, Debug)]
pub struct Family {
    pub spec: FamilySpec,
    pub grading: CoxGrading,
    /// The group acting on `N`, where the rays live.
    pub group: Vec<LatticeAutomorphism>,
    /// Orbits of the nonzero lattice points of the dual.
    pub dual_orbits: OrbitPartition,
    /// Permutation of the rays induced by each group element.
    pub ray_permutations: Vec<Vec<usize>>,
    pub f: GradedPolynomial,
}

impl Family {
    /// `z_1 ⋯ z_q`.
    pub fn product_exponent(&self) -> Exponent {
        vec![1; self.grading.nvars()]
    }

    /// Nonzero lattice points of the dual, sorted.
    pub fn dual_points(&self) -> &[Vec<i64>] {
        &self.dual_orbits.points
    }
}

fn select_group(p: &LatticePolytope, choice: GroupChoice) -> Vec<LatticeAutomorphism> {
    match choice {
        GroupChoice::OrientationPreserving => automorphism_group(p, true),
        GroupChoice::All => automorphism_group(p, false),
        GroupChoice::Trivial => vec![LatticeAutomorphism::identity(p.dim())],
    }
}

/// Builds `f = Σ_Q c_Q Σ_{x ∈ Q} Π z_k^{<v_k, x> + 1} + t Π z_k`.
pub fn build_family(spec: &FamilySpec) -> Result<Family> {
    let p = &spec.polytope;
    let grading = CoxGrading::from_polytope(p)?;
    let group = select_group(p, spec.group);
    let dual = p.polar_dual()?;
    let origin = vec![0; p.dim()];
    let nonzero: Vec<Vec<i64>> = dual
        .lattice_points()
        .into_iter()
        .filter(|x| *x != origin)
        .collect();
    if nonzero.is_empty() {
        return Err(Error::Degenerate);
    }
    let dual_orbits = orbits(&dual_group(&group), &nonzero)?;
    let coeffs = match &spec.coefficients {
        None => vec![RationalFunction::from(1); dual_orbits.orbits.len()],
        Some(c) if c.len() == dual_orbits.orbits.len() => c.clone(),
        Some(c) => {
            return Err(Error::NotInvariant(format!(
                "{} orbit coefficients given for {} orbits",
                c.len(),
                dual_orbits.orbits.len()
            )))
        }
    };
    let ray_permutations = group
        .iter()
        .map(|h| {
            permutation(h, grading.rays()).ok_or_else(|| {
                Error::NotARaySymmetry(format!("{:?} does not permute the rays", h.matrix()))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let beta = grading.anticanonical();
    let mut f = GradedPolynomial::zero(grading.nvars(), beta);
    for (x, &o) in dual_orbits.points.iter().zip(&dual_orbits.orbit_index) {
        f.add_term(anticanonical_exponent(&grading, x), coeffs[o].clone());
    }
    f.add_term(vec![1; grading.nvars()], RationalFunction::t());
    debug_assert!(f.is_homogeneous(&grading));
    Ok(Family {
        spec: spec.clone(),
        grading,
        group,
        dual_orbits,
        ray_permutations,
        f,
    })
}

/// `(<v_k, x> + 1)_k` for a dual lattice point `x`.
pub fn anticanonical_exponent(grading: &CoxGrading, x: &[i64]) -> Exponent {
    grading
        .rays()
        .iter()
        .map(|v| u32::try_from(dot(v, x) + 1).expect("x lies in the dual polytope"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub invariant: bool,
    /// `det h` for each group element, in order.
    pub determinants: Vec<i64>,
    /// Indices of elements that move `f`.
    pub failures: Vec<usize>,
}

impl InvarianceReport {
    pub fn symplectic(&self) -> bool {
        self.determinants.iter().all(|&d| d == 1)
    }
}

/// Whether every element of `g`, acting by the induced permutation of the
/// Cox variables, fixes `f` term by term.
pub fn check_invariance(
    f: &GradedPolynomial,
    g: &[LatticeAutomorphism],
    grading: &CoxGrading,
) -> Result<InvarianceReport> {
    let mut determinants = Vec::with_capacity(g.len());
    let mut failures = Vec::new();
    for (k, h) in g.iter().enumerate() {
        let perm = permutation(h, grading.rays()).ok_or_else(|| {
            Error::NotARaySymmetry(format!("{:?} does not permute the rays", h.matrix()))
        })?;
        determinants.push(h.det());
        if f.permute(&perm) != *f {
            failures.push(k);
        }
    }
    Ok(InvarianceReport {
        invariant: failures.is_empty(),
        determinants,
        failures,
    })
}

/// Rank of the sublattice fixed by a symplectic `S_4`, taken as given.
pub const SYMPLECTIC_S4_RANK: usize = 17;

/// Lower bound on the Picard rank of a general member:
/// `base + #(G-orbits of nonzero lattice points of p not interior to a facet)`.
///
/// Requires `|G| = 24` with `det = +1` throughout, and no lattice points in
/// the relative interior of edges of the dual.
pub fn rank_bound_with(p: &LatticePolytope, g: &[LatticeAutomorphism], base: usize) -> Result<usize> {
    if g.len() != 24 || g.iter().any(|h| h.det() != 1) {
        return Err(Error::HypothesisViolated(format!(
            "the group must be an orientation-preserving group of order 24, got order {}",
            g.len()
        )));
    }
    let dual = p.polar_dual()?;
    if let Some(x) = dual
        .lattice_points()
        .into_iter()
        .find(|x| dual.face_dimension(x) == Some(1))
    {
        return Err(Error::HypothesisViolated(format!(
            "dual lattice point {x:?} lies in the interior of an edge"
        )));
    }
    let n = p.dim();
    let counted: Vec<Vec<i64>> = p
        .lattice_points()
        .into_iter()
        .filter(|v| v.iter().any(|&c| c != 0) && p.face_dimension(v) != Some(n - 1))
        .collect();
    let part = orbits(g, &counted)?;
    Ok(base + part.orbits.len())
}

pub fn rank_bound(p: &LatticePolytope, g: &[LatticeAutomorphism]) -> Result<usize> {
    rank_bound_with(p, g, SYMPLECTIC_S4_RANK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rf;
    use crate::lattice::fixtures;

    #[test]
    fn edge_octahedron_pencil() {
        let fam = build_family(&FamilySpec::new(fixtures::edge_octahedron())).unwrap();
        assert_eq!(fam.grading.nvars(), 18);
        assert_eq!(fam.f.len(), 9);
        assert_eq!(fam.f.coeff(&vec![1; 18]), rf("t"));
        assert_eq!(fam.dual_orbits.orbits.len(), 1);
        let ones = fam.f.terms().values().filter(|c| **c == rf("1")).count();
        assert_eq!(ones, 8);
    }

    #[test]
    fn cube_pencil() {
        let fam = build_family(&FamilySpec::new(fixtures::cube())).unwrap();
        assert_eq!(fam.grading.nvars(), 26);
        assert_eq!(fam.f.len(), 7);
        let rep = check_invariance(&fam.f, &fam.group, &fam.grading).unwrap();
        assert!(rep.invariant && rep.symplectic());
    }

    #[test]
    fn reflections_reported() {
        let mut spec = FamilySpec::new(fixtures::cube());
        spec.group = GroupChoice::All;
        let fam = build_family(&spec).unwrap();
        let rep = check_invariance(&fam.f, &fam.group, &fam.grading).unwrap();
        assert!(rep.invariant);
        assert!(rep.determinants.contains(&-1));
        assert!(!rep.symplectic());
    }

    #[test]
    fn perturbed_pencil_not_invariant() {
        let fam = build_family(&FamilySpec::new(fixtures::edge_octahedron())).unwrap();
        let mut f = fam.f.clone();
        let e = f.terms().keys().find(|e| **e != vec![1; 18]).unwrap().clone();
        f.add_term(e, rf("t"));
        let rep = check_invariance(&f, &fam.group, &fam.grading).unwrap();
        assert!(!rep.invariant);
    }

    #[test]
    fn non_ray_symmetry() {
        let fam = build_family(&FamilySpec::new(fixtures::edge_octahedron())).unwrap();
        let shear = LatticeAutomorphism::new(vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(matches!(
            check_invariance(&fam.f, &[shear], &fam.grading),
            Err(Error::NotARaySymmetry(_))
        ));
    }

    #[test]
    fn rank_bounds() {
        for p in [fixtures::cube(), fixtures::fourteen_vertex(), fixtures::edge_octahedron()] {
            let g = automorphism_group(&p, true);
            assert_eq!(rank_bound(&p, &g).unwrap(), 19);
        }
        // the octahedron's dual (the cube) has edge-interior points
        let oct = fixtures::octahedron();
        let g = automorphism_group(&oct, true);
        assert!(matches!(rank_bound(&oct, &g), Err(Error::HypothesisViolated(_))));
        let cube = fixtures::cube();
        assert!(matches!(
            rank_bound(&cube, &automorphism_group(&cube, false)),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn spec_json() {
        let s = r#"{"polytope":{"dim":3,"vertices":[[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]]},
                    "group":"auto-orientation-preserving","parameter":"t-on-product-term"}"#;
        let spec: FamilySpec = serde_json::from_str(s).unwrap();
        assert_eq!(spec, FamilySpec::new(fixtures::octahedron()));
        assert!(serde_json::from_str::<FamilySpec>(&s.replace("t-on-product-term", "other")).is_err());
    }

    #[test]
    fn wrong_coefficient_count() {
        let mut spec = FamilySpec::new(fixtures::cube());
        spec.coefficients = Some(vec![rf("1"), rf("2")]);
        assert!(matches!(build_family(&spec), Err(Error::NotInvariant(_))));
    }
}
