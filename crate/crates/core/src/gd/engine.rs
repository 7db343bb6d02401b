//! Pole-order reduction over a fixed family, with per-degree caches.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::orbits::MonomialOrbits;
use super::system::{Coeffs, Decomposition, Exact, LevelSystem, Modular};
use super::witness::{expand_witness, MembershipWitness};
use crate::arith::RationalFunction;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, MERSENNE_61};
use crate::toric::{check_invariance, CoxGrading, Exponent, Family, GradedPoly, GradedPolynomial};
use crate::Fp;

const SEED: u64 = 0x4b33_5046;
const SKELETON_ATTEMPTS: usize = 4;

/// `∂f/∂z_i` for every Cox variable.
pub fn jacobian_partials(f: &GradedPolynomial, grading: &CoxGrading) -> Vec<GradedPolynomial> {
    (0..grading.nvars()).map(|i| f.partial(i, grading)).collect()
}

/// One right-hand side at every degree `kβ` it touches, as orbit coordinates.
pub type Cascade<C> = BTreeMap<usize, Vec<C>>;

/// Reduced coordinates and, when requested, the decompositions used.
#[derive(Clone, Debug)]
pub struct Reduced<C> {
    /// Complement coordinates per `k` (`k = 0` holds the constant).
    pub residual: BTreeMap<usize, Vec<C>>,
    pub steps: BTreeMap<usize, (Vec<C>, Decomposition<C>)>,
}

pub struct Engine<'a> {
    pub family: &'a Family,
    pub use_j1: bool,
    pub symmetric: bool,
    perms: Vec<Vec<usize>>,
    generators: Vec<GradedPolynomial>,
    orbits: Vec<Option<MonomialOrbits>>,
    levels: Vec<Option<LevelSystem>>,
    rng: ChaCha8Rng,
    t0: Fp,
}

impl<'a> Engine<'a> {
    /// With `use_symmetry`, works on invariants of the family's group when
    /// `f` is invariant, and on all monomials otherwise.
    pub fn new(family: &'a Family, use_symmetry: bool, use_j1: bool) -> Result<Self> {
        let grading = &family.grading;
        let q = grading.nvars();
        let symmetric = use_symmetry && check_invariance(&family.f, &family.group, grading)?.invariant;
        let perms = if symmetric {
            family.ray_permutations.clone()
        } else {
            vec![(0..q).collect()]
        };
        let partials = jacobian_partials(&family.f, grading);
        let generators = if use_j1 {
            partials
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let mut e = vec![0; q];
                    e[i] = 1;
                    p.mul_monomial(&e, grading)
                })
                .collect()
        } else {
            partials
        };
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let t0 = Fp::new(rng.gen_range(2..MERSENNE_61));
        Ok(Engine {
            family,
            use_j1,
            symmetric,
            perms,
            generators,
            orbits: Vec::new(),
            levels: Vec::new(),
            rng,
            t0,
        })
    }

    pub fn grading(&self) -> &CoxGrading {
        &self.family.grading
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn t0(&self) -> Fp {
        self.t0
    }

    fn fresh_point(&mut self) -> Fp {
        Fp::new(self.rng.gen_range(2..MERSENNE_61))
    }

    /// Orbits of the monomials of degree `kβ`.
    pub fn orbits(&mut self, k: usize) -> Result<&MonomialOrbits> {
        if self.orbits.len() <= k {
            self.orbits.resize(k + 1, None);
        }
        if self.orbits[k].is_none() {
            let g = &self.family.grading;
            let mons = g.monomials_of_degree(&g.scale(&g.anticanonical(), k as i64))?;
            self.orbits[k] = Some(MonomialOrbits::new(&mons, &self.perms));
        }
        Ok(self.orbits[k].as_ref().unwrap())
    }

    /// Orbits indexing the numerators of `Ω/f^{k+1}`: degree `kβ`, or
    /// `(k+1)β` for `J_1`, whose numerators carry the extra `z_1⋯z_q`.
    pub fn numerator_orbits(&mut self, k: usize) -> Result<&MonomialOrbits> {
        self.orbits(k + usize::from(self.use_j1))
    }

    /// The system of level `k >= 1` with its skeleton.
    pub fn level(&mut self, k: usize) -> Result<&LevelSystem> {
        assert!(k >= 1);
        if self.levels.len() <= k {
            self.levels.resize(k + 1, None);
        }
        if self.levels[k].is_none() {
            let rows = self.numerator_orbits(k)?.clone();
            let lower = self.numerator_orbits(k - 1)?.clone();
            let mut sys = LevelSystem::build(
                &self.family.grading,
                &self.generators,
                &self.perms,
                k,
                self.use_j1,
                &rows,
                &lower,
            )?;
            sys.select_skeleton(self.t0, true)?;
            self.levels[k] = Some(sys);
        }
        Ok(self.levels[k].as_ref().unwrap())
    }

    /// Coordinates of an invariant numerator of `Ω/f^{k+1}` (degree `kβ`).
    pub fn coordinates(&mut self, k: usize, p: &GradedPolynomial) -> Result<Vec<RationalFunction>> {
        let raw = if self.use_j1 {
            p.mul_monomial(&self.family.product_exponent(), &self.family.grading)
        } else {
            p.clone()
        };
        let orbits = self.numerator_orbits(k)?;
        let mut v = vec![RationalFunction::zero(); orbits.len()];
        for (e, c) in raw.terms() {
            let o = orbits.orbit_of(e).ok_or_else(|| {
                Error::NoSuchDegree(format!("monomial {e:?} does not have degree {k}·β"))
            })?;
            if orbits.reps[o] == *e {
                v[o] = c.clone();
            }
        }
        // the coefficient must be constant along each orbit
        for (o, members) in orbits.members.iter().enumerate() {
            for m in members {
                if raw.coeff(m) != v[o] {
                    return Err(Error::NotInvariant(format!(
                        "coefficient of {m:?} differs from its orbit representative"
                    )));
                }
            }
        }
        Ok(v)
    }

    /// `Σ_o v_o Σ_{m in orbit o} m` over the numerator orbits of level `k`.
    pub fn expand_raw(&mut self, k: usize, v: &[RationalFunction]) -> Result<GradedPolynomial> {
        let g = self.family.grading.clone();
        let d = g.scale(&g.anticanonical(), (k + usize::from(self.use_j1)) as i64);
        let orbits = self.numerator_orbits(k)?;
        let mut p = GradedPoly::zero(g.nvars(), d);
        for (c, members) in v.iter().zip(&orbits.members) {
            for m in members {
                p.add_term(m.clone(), c.clone());
            }
        }
        Ok(p)
    }

    /// The numerator of `Ω/f^{k+1}` with coordinates `v`, of degree `kβ`.
    /// For `J_1` this divides by `z_1⋯z_q`, which may be impossible.
    pub fn expand(&mut self, k: usize, v: &[RationalFunction]) -> Result<GradedPolynomial> {
        let raw = self.expand_raw(k, v)?;
        if self.use_j1 {
            self.divide_product(k, raw)
        } else {
            Ok(raw)
        }
    }

    fn divide_product(&self, k: usize, raw: GradedPolynomial) -> Result<GradedPolynomial> {
        let g = &self.family.grading;
        let mut p = GradedPoly::zero(g.nvars(), g.scale(&g.anticanonical(), k as i64));
        for (e, c) in raw.terms() {
            if e.contains(&0) {
                return Err(Error::ReductionStuck(format!(
                    "{k}·β (J1): numerator not divisible by z_1⋯z_q"
                )));
            }
            p.add_term(e.iter().map(|x| x - 1).collect(), c.clone());
        }
        Ok(p)
    }

    /// Runs the top-down cascade for a batch of right-hand sides over `ring`.
    /// Level `k` keeps its complement part and passes `(1/k)·divergence`
    /// down to `k - 1`; `k = 0` is kept whole.
    pub fn reduce_batch<K: Coeffs>(
        &mut self,
        ring: &K,
        items: Vec<Cascade<K::C>>,
        keep_steps: bool,
    ) -> Result<Vec<Reduced<K::C>>> {
        let top = items.iter().filter_map(|c| c.keys().next_back().copied()).max().unwrap_or(0);
        let mut pending = items;
        let mut out: Vec<Reduced<K::C>> = (0..pending.len())
            .map(|_| Reduced {
                residual: BTreeMap::new(),
                steps: BTreeMap::new(),
            })
            .collect();
        for k in (1..=top).rev() {
            let lower_len = self.numerator_orbits(k - 1)?.len();
            self.level(k)?;
            let active: Vec<usize> = (0..pending.len())
                .filter(|&i| pending[i].get(&k).is_some_and(|v| v.iter().any(|x| !x.is_zero())))
                .collect();
            if active.is_empty() {
                continue;
            }
            let rhs: Vec<Vec<K::C>> = active.iter().map(|&i| pending[i][&k].clone()).collect();
            let decs = self.decompose_with_retry(ring, k, &rhs)?;
            let sys = self.levels[k].as_ref().unwrap();
            for (&i, d) in active.iter().zip(decs) {
                let div = sys.divergence(&d, lower_len);
                let slot = pending[i].entry(k - 1).or_insert_with(|| vec![K::C::zero(); lower_len]);
                for (x, y) in slot.iter_mut().zip(div) {
                    *x = x.add_ref(&y);
                }
                out[i].residual.insert(k, d.residual.clone());
                if keep_steps {
                    out[i].steps.insert(k, (pending[i][&k].clone(), d));
                }
            }
        }
        for k in 1..=top {
            let n = self.levels[k].as_ref().unwrap().skeleton.as_ref().unwrap().complement.len();
            for o in out.iter_mut() {
                o.residual.entry(k).or_insert_with(|| vec![K::C::zero(); n]);
            }
        }
        for (i, p) in pending.into_iter().enumerate() {
            let n0 = self.numerator_orbits(0)?.len();
            out[i]
                .residual
                .insert(0, p.get(&0).cloned().unwrap_or_else(|| vec![K::C::zero(); n0]));
        }
        Ok(out)
    }

    fn decompose_with_retry<K: Coeffs>(
        &mut self,
        ring: &K,
        k: usize,
        rhs: &[Vec<K::C>],
    ) -> Result<Vec<Decomposition<K::C>>> {
        for attempt in 0..SKELETON_ATTEMPTS {
            if attempt > 0 {
                let t = self.fresh_point();
                self.levels[k].as_mut().unwrap().select_skeleton(t, true)?;
            }
            let sys = self.levels[k].as_ref().unwrap();
            let lifted = sys
                .lift(ring)
                .ok_or_else(|| Error::ReductionStuck(format!("{} (bad evaluation point)", sys.label())))?;
            match sys.decompose(ring, &lifted, rhs) {
                Ok(d) => return Ok(d),
                Err(Error::NoSolution) => {}
                Err(e) => return Err(e),
            }
        }
        Err(Error::ReductionStuck(self.levels[k].as_ref().unwrap().label()))
    }

    /// Exact batch reduction.
    pub fn reduce_exact(
        &mut self,
        items: Vec<Cascade<RationalFunction>>,
        keep_steps: bool,
    ) -> Result<Vec<Reduced<RationalFunction>>> {
        self.reduce_batch(&Exact, items, keep_steps)
    }

    /// Reduction with `t` specialized to the engine's point.
    pub fn reduce_modular(&mut self, items: Vec<Cascade<Fp>>) -> Result<Vec<Reduced<Fp>>> {
        let ring = Modular(self.t0);
        self.reduce_batch(&ring, items, false)
    }

    /// One exact step at `kβ`: complement coordinates of the numerator and
    /// the `(1/k)·divergence` coordinates at `(k-1)β`.
    pub fn step_exact(
        &mut self,
        k: usize,
        coords: &[RationalFunction],
    ) -> Result<(Vec<RationalFunction>, Vec<RationalFunction>)> {
        let lower_len = self.numerator_orbits(k - 1)?.len();
        self.level(k)?;
        let rhs = vec![coords.to_vec()];
        let d = self.decompose_with_retry(&Exact, k, &rhs)?.remove(0);
        let div = self.levels[k].as_ref().unwrap().divergence(&d, lower_len);
        Ok((d.residual, div))
    }

    /// Numerator of degree `kβ` with the given complement coordinates.
    pub fn expand_residual(&mut self, k: usize, r: &[RationalFunction]) -> Result<GradedPolynomial> {
        if k == 0 {
            return self.expand(0, r);
        }
        let sys = self.level(k)?;
        let comp = sys.skeleton.as_ref().unwrap().complement.clone();
        let mut v = vec![RationalFunction::zero(); sys.rows.len()];
        for (&o, c) in comp.iter().zip(r) {
            v[o] = c.clone();
        }
        self.expand(k, &v)
    }

    /// The witness of one exact reduction step at `kβ`.
    pub fn witness(
        &mut self,
        k: usize,
        target: &[RationalFunction],
        dec: &Decomposition<RationalFunction>,
    ) -> Result<MembershipWitness> {
        let target = self.expand_raw(k, target)?;
        let g = self.family.grading.clone();
        let sys = self.level(k)?;
        Ok(expand_witness(
            &g,
            target,
            &sys.gens,
            sys.skeleton.as_ref().unwrap(),
            &sys.rows,
            dec,
            sys.use_j1,
        ))
    }

    /// Complement representatives per `k`, in coordinate order.
    pub fn complement_basis(&mut self, k: usize) -> Result<Vec<Exponent>> {
        if k == 0 {
            return Ok(self.orbits(0)?.reps.clone());
        }
        let sys = self.level(k)?;
        let sk = sys.skeleton.as_ref().unwrap();
        Ok(sk.complement.iter().map(|&o| sys.rows.reps[o].clone()).collect())
    }
}
