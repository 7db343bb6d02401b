//! The linear system of one graded piece: "multiply by partials" against a
//! complement basis.

use num_traits::{One, Zero};

use super::orbits::{slot_orbits, MonomialOrbits};
use crate::arith::{rank_profile, rf_solve_many, solve_field, Matrix, RFMatrix, RationalFunction};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::toric::{CoxGrading, Exponent, GradedPolynomial};
use crate::Fp;

/// A coefficient field for the reduction: exact `Q(t)`, or `F_p` after
/// substituting a point for `t`.
pub trait Coeffs {
    type C: Field + Send + Sync;
    fn lift(&self, r: &RationalFunction) -> Option<Self::C>;
    /// Solves a square nonsingular system for several right-hand sides.
    fn solve(&self, a: &Matrix<Self::C>, rhs: &[Vec<Self::C>]) -> Result<Vec<Vec<Self::C>>>;
}

pub struct Exact;

impl Coeffs for Exact {
    type C = RationalFunction;
    fn lift(&self, r: &RationalFunction) -> Option<RationalFunction> {
        Some(r.clone())
    }
    fn solve(&self, a: &RFMatrix, rhs: &[Vec<RationalFunction>]) -> Result<Vec<Vec<RationalFunction>>> {
        rf_solve_many(a, rhs)
    }
}

/// `t` specialized to a point of `F_p`.
pub struct Modular(pub Fp);

impl Coeffs for Modular {
    type C = Fp;
    fn lift(&self, r: &RationalFunction) -> Option<Fp> {
        r.eval_mod(self.0)
    }
    fn solve(&self, a: &Matrix<Fp>, rhs: &[Vec<Fp>]) -> Result<Vec<Vec<Fp>>> {
        rhs.iter().map(|b| solve_field(a, b)).collect()
    }
}

/// Column `c` holds the orbit sum `Σ_{(i, m) in c} m·g_i`, read off at the
/// row representatives.
pub fn generator_matrix(
    rows: &MonomialOrbits,
    gens: &[Vec<(usize, Exponent)>],
    generators: &[GradedPolynomial],
) -> RFMatrix {
    let mut matrix = RFMatrix::zeros(rows.len(), gens.len());
    for (c, orbit) in gens.iter().enumerate() {
        for (i, m) in orbit {
            for (e, coef) in generators[*i].terms() {
                let prod: Exponent = e.iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(o) = rows.rep_index(&prod) {
                    let v = matrix.get(o, c).clone() + coef.clone();
                    matrix.set(o, c, v);
                }
            }
        }
    }
    matrix
}

/// Which generators, complement monomials and rows make up the square
/// subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub gens: Vec<usize>,
    pub complement: Vec<usize>,
    pub rows: Vec<usize>,
}

/// Solution of `K = Σ a_c G_c + Σ r_o e_o` on one graded piece.
#[derive(Clone, Debug)]
pub struct Decomposition<C> {
    /// Coefficient of each selected generator orbit, in skeleton order.
    pub gens: Vec<C>,
    /// Coefficient of each complement orbit, in skeleton order.
    pub residual: Vec<C>,
}

/// The piece of degree `kβ` (numerator of `Ω/f^{k+1}`).
#[derive(Clone, Debug)]
pub struct LevelSystem {
    pub k: usize,
    pub use_j1: bool,
    /// Orbits indexing the rows: degree `kβ`, or `(k+1)β` for `J_1`, where
    /// numerators are taken against `dz_1/z_1 ∧ ⋯` instead of `Ω`.
    pub rows: MonomialOrbits,
    /// Orbits of `(i, m)`: column `c` is `Σ m·∂_i f` (or `Σ m·z_i ∂_i f`).
    pub gens: Vec<Vec<(usize, Exponent)>>,
    pub matrix: RFMatrix,
    /// Divergence of each generator, sparse over the rows of the level below.
    pub div: Vec<Vec<(usize, i64)>>,
    pub skeleton: Option<Skeleton>,
}

impl LevelSystem {
    /// `rows` indexes the numerators of this level and `lower` those of the
    /// level below: degrees `kβ` and `(k-1)β`, or `(k+1)β` and `kβ` for `J_1`.
    pub fn build(
        grading: &CoxGrading,
        generators: &[GradedPolynomial],
        perms: &[Vec<usize>],
        k: usize,
        use_j1: bool,
        rows: &MonomialOrbits,
        lower: &MonomialOrbits,
    ) -> Result<Self> {
        let q = grading.nvars();
        let beta = grading.anticanonical();
        let slot_degrees: Vec<_> = if use_j1 {
            vec![grading.scale(&beta, k as i64); q]
        } else {
            let base = grading.scale(&beta, k as i64 - 1);
            (0..q).map(|i| grading.add(&base, &grading.ray_degree(i))).collect()
        };
        let slots = slot_degrees
            .iter()
            .map(|d| grading.monomials_of_degree(d))
            .collect::<Result<Vec<_>>>()?;
        let gens = slot_orbits(&slots, perms);
        let matrix = generator_matrix(rows, &gens, generators);

        let div = gens
            .iter()
            .map(|orbit| {
                let mut v: Vec<(usize, i64)> = Vec::new();
                for (i, m) in orbit {
                    if m[*i] == 0 {
                        continue;
                    }
                    // θ_i m for J_1, ∂_i m otherwise
                    let e: Exponent = if use_j1 {
                        m.clone()
                    } else {
                        let mut e = m.clone();
                        e[*i] -= 1;
                        e
                    };
                    if let Some(o) = lower.rep_index(&e) {
                        match v.iter_mut().find(|(j, _)| *j == o) {
                            Some((_, x)) => *x += i64::from(m[*i]),
                            None => v.push((o, i64::from(m[*i]))),
                        }
                    }
                }
                v.sort();
                v
            })
            .collect();

        Ok(LevelSystem {
            k,
            use_j1,
            rows: rows.clone(),
            gens,
            matrix,
            div,
            skeleton: None,
        })
    }

    pub fn lift<K: Coeffs>(&self, ring: &K) -> Option<Matrix<K::C>> {
        let rows = self
            .matrix
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| ring.lift(x)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Matrix::with_cols(rows, self.gens.len()).ok()
    }

    /// Chooses the skeleton from the rank profile of `[M | E]` over `F_p`,
    /// where `E` holds unit columns for the complement candidates in grlex
    /// order. With `with_complement = false` only `M` is profiled.
    pub fn select_skeleton(&mut self, t0: Fp, with_complement: bool) -> Result<()> {
        let m = self
            .lift(&Modular(t0))
            .ok_or_else(|| Error::ReductionStuck(format!("{} (bad evaluation point)", self.label())))?;
        let ng = self.gens.len();
        let all: Vec<usize> = (0..self.rows.len()).collect();
        let cands: &[usize] = if with_complement { &all } else { &[] };
        let rows: Vec<Vec<Fp>> = m
            .rows()
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut full = row.clone();
                full.extend(cands.iter().map(|&o| if o == r { Fp::one() } else { Fp::zero() }));
                full
            })
            .collect();
        let full = Matrix::with_cols(rows, ng + cands.len())?;
        let prof = rank_profile(&full);
        let gens = prof.pivot_cols.iter().copied().filter(|&c| c < ng).collect();
        let complement = prof.pivot_cols.iter().filter(|&&c| c >= ng).map(|&c| cands[c - ng]).collect();
        self.skeleton = Some(Skeleton {
            gens,
            complement,
            rows: prof.pivot_rows,
        });
        Ok(())
    }

    pub fn label(&self) -> String {
        if self.use_j1 {
            format!("{}·β (J1)", self.k)
        } else {
            format!("{}·β", self.k)
        }
    }

    /// Decomposes each right-hand side (coordinates over `rows`) using the
    /// skeleton. Fails with `NoSolution` if some right-hand side is not
    /// matched exactly on every row.
    pub fn decompose<K: Coeffs>(
        &self,
        ring: &K,
        lifted: &Matrix<K::C>,
        rhs: &[Vec<K::C>],
    ) -> Result<Vec<Decomposition<K::C>>> {
        let sk = self.skeleton.as_ref().expect("skeleton selected");
        let ng = sk.gens.len();
        let n = ng + sk.complement.len();
        if rhs.is_empty() {
            return Ok(Vec::new());
        }
        let square_rows: Vec<Vec<K::C>> = sk
            .rows
            .iter()
            .map(|&r| {
                let mut row: Vec<K::C> = sk.gens.iter().map(|&g| lifted.get(r, g).clone()).collect();
                row.extend(sk.complement.iter().map(|&o| if o == r { K::C::one() } else { K::C::zero() }));
                row
            })
            .collect();
        let sols = if n == 0 {
            vec![Vec::new(); rhs.len()]
        } else {
            let square = Matrix::with_cols(square_rows, n)?;
            let restricted: Vec<Vec<K::C>> = rhs
                .iter()
                .map(|b| sk.rows.iter().map(|&r| b[r].clone()).collect())
                .collect();
            ring.solve(&square, &restricted)?
        };
        let mut out = Vec::with_capacity(rhs.len());
        for (x, b) in sols.into_iter().zip(rhs) {
            let (a, r) = x.split_at(ng);
            for (row, target) in b.iter().enumerate() {
                let mut acc = K::C::zero();
                for (g, ag) in sk.gens.iter().zip(a) {
                    let m = lifted.get(row, *g);
                    if !ag.is_zero() && !m.is_zero() {
                        acc = acc.add_ref(&m.mul_ref(ag));
                    }
                }
                if let Some(p) = sk.complement.iter().position(|&o| o == row) {
                    acc = acc.add_ref(&r[p]);
                }
                if acc != *target {
                    return Err(Error::NoSolution);
                }
            }
            out.push(Decomposition {
                gens: a.to_vec(),
                residual: r.to_vec(),
            });
        }
        Ok(out)
    }

    /// `(1/k) Σ a_c div(G_c)` in coordinates over the rows of the level below.
    pub fn divergence<C: Field>(&self, d: &Decomposition<C>, lower_len: usize) -> Vec<C> {
        let sk = self.skeleton.as_ref().expect("skeleton selected");
        let mut raw: Vec<(usize, C)> = Vec::new();
        for (&g, a) in sk.gens.iter().zip(&d.gens) {
            if a.is_zero() {
                continue;
            }
            for &(o, n) in &self.div[g] {
                let v = a.mul_ref(&C::from_int(n));
                match raw.iter_mut().find(|(j, _)| *j == o) {
                    Some((_, x)) => *x = x.add_ref(&v),
                    None => raw.push((o, v)),
                }
            }
        }
        let scale = C::from_int(self.k as i64).inv();
        let mut out = vec![C::zero(); lower_len];
        for (o, v) in raw {
            out[o] = out[o].add_ref(&v.mul_ref(&scale));
        }
        out
    }
}
