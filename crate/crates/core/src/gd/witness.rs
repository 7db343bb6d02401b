//! Jacobian-ideal membership with exact, re-checkable cofactors.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::engine::jacobian_partials;
use super::orbits::{slot_orbits, MonomialOrbits};
use super::system::{generator_matrix, Coeffs, Decomposition, Exact, Modular, Skeleton};
use crate::arith::{rank_profile, Matrix, RationalFunction};
use crate::error::{Error, Result};
use crate::scalar::MERSENNE_61;
use crate::toric::{check_invariance, CoxGrading, Exponent, Family, GradedPoly, GradedPolynomial};
use crate::Fp;

/// `target = Σ A_i ∂f/∂z_i + residual`, or for `J_1`
/// `target = Σ B_i z_i ∂f/∂z_i + residual` with `target = z_1⋯z_q · K`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipWitness {
    pub target: GradedPolynomial,
    pub cofactors: Vec<GradedPolynomial>,
    /// Complement part; zero for plain membership.
    pub residual: GradedPolynomial,
    pub use_j1: bool,
}

impl MembershipWitness {
    /// Re-expands the identity term by term.
    pub fn verify(&self, f: &GradedPolynomial, grading: &CoxGrading) -> bool {
        let q = grading.nvars();
        let partials = jacobian_partials(f, grading);
        let mut lhs = self.target.clone();
        let mut rhs = self.residual.clone();
        if rhs.is_empty() {
            rhs = GradedPoly::zero(q, lhs.degree().clone());
        }
        for (i, (a, p)) in self.cofactors.iter().zip(&partials).enumerate() {
            if a.is_empty() {
                continue;
            }
            let mut term = a.mul(p, grading);
            if self.use_j1 {
                let mut e = vec![0; q];
                e[i] = 1;
                term = term.mul_monomial(&e, grading);
            }
            if term.degree() != lhs.degree() {
                return false;
            }
            rhs.add_assign(&term);
        }
        if lhs.is_empty() {
            lhs = GradedPoly::zero(q, rhs.degree().clone());
        }
        lhs.terms() == rhs.terms()
    }
}

/// Expands an orbit solution into cofactors and a residual polynomial.
pub(crate) fn expand_witness(
    grading: &CoxGrading,
    target: GradedPolynomial,
    gens: &[Vec<(usize, Exponent)>],
    skeleton: &Skeleton,
    rows: &MonomialOrbits,
    dec: &Decomposition<RationalFunction>,
    use_j1: bool,
) -> MembershipWitness {
    let q = grading.nvars();
    let mut cofactors: Vec<Option<GradedPolynomial>> = vec![None; q];
    for (&g, a) in skeleton.gens.iter().zip(&dec.gens) {
        if a.is_zero() {
            continue;
        }
        for (i, m) in &gens[g] {
            cofactors[*i]
                .get_or_insert_with(|| GradedPoly::zero(q, grading.degree(m)))
                .add_term(m.clone(), a.clone());
        }
    }
    let slot_degree = |i: usize| {
        if use_j1 {
            grading.sub(target.degree(), &grading.anticanonical())
        } else {
            let d = grading.sub(target.degree(), &grading.anticanonical());
            grading.add(&d, &grading.ray_degree(i))
        }
    };
    let cofactors = cofactors
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.unwrap_or_else(|| GradedPoly::zero(q, slot_degree(i))))
        .collect();
    let mut residual = GradedPoly::zero(q, target.degree().clone());
    for (&o, r) in skeleton.complement.iter().zip(&dec.residual) {
        for m in &rows.members[o] {
            residual.add_term(m.clone(), r.clone());
        }
    }
    MembershipWitness {
        target,
        cofactors,
        residual,
        use_j1,
    }
}

/// Decides `K ∈ J` (or `K ∈ J_1`) for the family's pencil and returns exact
/// cofactors. With `use_symmetry`, an invariant `K` is handled on the
/// invariant subspace.
pub fn ideal_membership(
    k: &GradedPolynomial,
    family: &Family,
    use_j1: bool,
    use_symmetry: bool,
) -> Result<MembershipWitness> {
    let grading = &family.grading;
    let q = grading.nvars();
    if k.nvars() != q {
        return Err(Error::Shape(format!("{} variables for a ring with {q}", k.nvars())));
    }
    if !k.is_homogeneous(grading) {
        return Err(Error::NoSuchDegree("target is not homogeneous".into()));
    }
    let beta = grading.anticanonical();
    let partials = jacobian_partials(&family.f, grading);
    let prod = vec![1u32; q];
    let (generators, row_degree, slot_degrees, target) = if use_j1 {
        let gens: Vec<GradedPolynomial> = partials
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut e = vec![0; q];
                e[i] = 1;
                p.mul_monomial(&e, grading)
            })
            .collect();
        (
            gens,
            grading.add(k.degree(), &beta),
            vec![k.degree().clone(); q],
            k.mul_monomial(&prod, grading),
        )
    } else {
        let slots = (0..q)
            .map(|i| grading.add(&grading.sub(k.degree(), &beta), &grading.ray_degree(i)))
            .collect();
        (partials, k.degree().clone(), slots, k.clone())
    };

    let invariant_target = |perms: &[Vec<usize>]| perms.iter().all(|p| target.permute(p) == target);
    let perms: Vec<Vec<usize>> = if use_symmetry
        && check_invariance(&family.f, &family.group, grading)?.invariant
        && invariant_target(&family.ray_permutations)
    {
        family.ray_permutations.clone()
    } else {
        vec![(0..q).collect()]
    };

    let mons = grading.monomials_of_degree(&row_degree)?;
    let rows = MonomialOrbits::new(&mons, &perms);
    let slots = slot_degrees
        .iter()
        .map(|d| grading.monomials_of_degree(d))
        .collect::<Result<Vec<_>>>()?;
    let gens = slot_orbits(&slots, &perms);
    let matrix = generator_matrix(&rows, &gens, &generators);

    let mut rhs = vec![RationalFunction::zero(); rows.len()];
    for (e, c) in target.terms() {
        match rows.rep_index(e) {
            Some(o) => rhs[o] = c.clone(),
            None if rows.orbit_of(e).is_some() => {}
            None => return Err(Error::NoSuchDegree(format!("monomial {e:?} outside the graded piece"))),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x4a61_636f);
    for _ in 0..4 {
        let t0 = Fp::new(rng.gen_range(2..MERSENNE_61));
        let ring = Modular(t0);
        let Some(lifted) = lift_matrix(&matrix, &ring) else {
            continue;
        };
        let prof = rank_profile(&lifted);
        // a second profile with K appended tells membership at this point
        let Some(kp) = rhs.iter().map(|x| ring.lift(x)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let aug_rows = lifted
            .rows()
            .iter()
            .zip(&kp)
            .map(|(r, x)| {
                let mut r = r.clone();
                r.push(*x);
                r
            })
            .collect();
        let aug = Matrix::with_cols(aug_rows, gens.len() + 1)?;
        if rank_profile(&aug).rank() > prof.rank() {
            return Err(Error::NotInIdeal);
        }
        let skeleton = Skeleton {
            gens: prof.pivot_cols.clone(),
            complement: Vec::new(),
            rows: prof.pivot_rows.clone(),
        };
        let sys = super::system::LevelSystem {
            k: 0,
            use_j1,
            rows: rows.clone(),
            gens: gens.clone(),
            matrix: matrix.clone(),
            div: Vec::new(),
            skeleton: Some(skeleton.clone()),
        };
        match sys.decompose(&Exact, &matrix, std::slice::from_ref(&rhs)) {
            Ok(mut d) => {
                let w = expand_witness(grading, target.clone(), &gens, &skeleton, &rows, &d.remove(0), use_j1);
                debug_assert!(w.verify(&family.f, grading));
                return Ok(w);
            }
            Err(Error::NoSolution) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotInIdeal)
}

fn lift_matrix<K: Coeffs>(m: &Matrix<RationalFunction>, ring: &K) -> Option<Matrix<K::C>> {
    let rows = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| ring.lift(x)).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Matrix::with_cols(rows, m.ncols()).ok()
}
