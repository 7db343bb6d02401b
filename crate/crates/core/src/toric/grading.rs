//! Cox homogeneous coordinates and their grading by the class group.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::linalg::{mat_vec, rank, LatticeVector};
use crate::lattice::polytope::{h_lattice_points, HalfSpace};
use crate::lattice::{smith_normal_form, LatticePolytope, SmithForm};

/// A Cox exponent vector, one entry per ray.
pub type Exponent = Vec<u32>;

/// A class in `Cl = Z^f ⊕ Z/d_1 ⊕ … ⊕ Z/d_s`, stored as the torsion
/// residues (each in `[0, d_i)`) followed by the free coordinates.
pub type Degree = Vec<i64>;

/// Rays of a complete fan together with the presentation of the class group
/// `Cl = Z^q / M` obtained from the Smith form of the `q × n` pairing matrix.
#[derive(Clone, Debug)]
pub struct CoxGrading {
    rays: Vec<LatticeVector>,
    snf: SmithForm,
    // per component: Some(modulus) for torsion, None for free
    components: Vec<(usize, Option<i64>)>,
}

#[derive(Serialize)]
pub struct GradingSummary {
    pub rays: Vec<LatticeVector>,
    pub torsion: Vec<i64>,
    pub free_rank: usize,
    pub anticanonical: Degree,
}

impl CoxGrading {
    /// Rays are all nonzero lattice points of the reflexive polytope `p`, in
    /// lexicographic order.
    pub fn from_polytope(p: &LatticePolytope) -> Result<Self> {
        p.require_reflexive()?;
        let origin = vec![0; p.dim()];
        let rays = p
            .lattice_points()
            .into_iter()
            .filter(|v| *v != origin)
            .collect();
        Self::from_rays(rays)
    }

    /// Grading for an explicit ray list. The rays must span `Q^n`.
    pub fn from_rays(rays: Vec<LatticeVector>) -> Result<Self> {
        let n = rays.first().map_or(0, Vec::len);
        if n == 0 || rays.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("rays must be nonempty vectors of equal length".into()));
        }
        if rank(&rays) != n {
            return Err(Error::Degenerate);
        }
        let q = rays.len();
        let snf = smith_normal_form(&rays, n);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for i in 0..q {
            match snf.diagonal.get(i) {
                Some(1) => {}
                Some(&d) if d > 1 => torsion.push((i, Some(d))),
                _ => free.push((i, None)),
            }
        }
        torsion.extend(free);
        Ok(CoxGrading {
            rays,
            snf,
            components: torsion,
        })
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn nvars(&self) -> usize {
        self.rays.len()
    }

    pub fn dim(&self) -> usize {
        self.rays[0].len()
    }

    pub fn torsion(&self) -> Vec<i64> {
        self.components.iter().filter_map(|c| c.1).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.components.iter().filter(|c| c.1.is_none()).count()
    }

    fn reduce(&self, mut d: Degree) -> Degree {
        for (k, (_, m)) in self.components.iter().enumerate() {
            if let Some(m) = m {
                d[k] = d[k].rem_euclid(*m);
            }
        }
        d
    }

    /// Class of the monomial `z^a`; `a` may have negative entries.
    pub fn degree_of(&self, a: &[i64]) -> Degree {
        let y = mat_vec(&self.snf.u, a);
        self.reduce(self.components.iter().map(|(i, _)| y[*i]).collect())
    }

    pub fn degree(&self, e: &[u32]) -> Degree {
        let a: Vec<i64> = e.iter().map(|&x| i64::from(x)).collect();
        self.degree_of(&a)
    }

    pub fn ray_degree(&self, i: usize) -> Degree {
        let mut a = vec![0i64; self.nvars()];
        a[i] = 1;
        self.degree_of(&a)
    }

    pub fn zero_degree(&self) -> Degree {
        vec![0; self.components.len()]
    }

    /// The anticanonical class, `deg(z_1 ⋯ z_q)`.
    pub fn anticanonical(&self) -> Degree {
        self.degree_of(&vec![1; self.nvars()])
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Degree {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Degree, b: &Degree) -> Degree {
        self.reduce(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, a: &Degree, k: i64) -> Degree {
        self.reduce(a.iter().map(|x| x * k).collect())
    }

    /// Some `a ∈ Z^q` of class `c`.
    pub fn particular_solution(&self, c: &Degree) -> Result<Vec<i64>> {
        if c.len() != self.components.len() {
            return Err(Error::NoSuchDegree(format!(
                "class {c:?} has {} components, the class group has {}",
                c.len(),
                self.components.len()
            )));
        }
        let mut y = vec![0i64; self.nvars()];
        for (k, (i, _)) in self.components.iter().enumerate() {
            y[*i] = c[k];
        }
        Ok(mat_vec(&self.snf.u_inv, &y))
    }

    /// All monomials of class `c`, in graded lexicographic order.
    ///
    /// These are `a0 + P x ≥ 0` for a particular solution `a0` and `x` in the
    /// lattice polytope `{x : <v_i, x> ≥ -a0_i}`.
    pub fn monomials_of_degree(&self, c: &Degree) -> Result<Vec<Exponent>> {
        let a0 = self.particular_solution(c)?;
        let halfspaces: Vec<HalfSpace> = self
            .rays
            .iter()
            .zip(&a0)
            .map(|(v, &b)| HalfSpace {
                normal: v.iter().map(|x| -x).collect(),
                bound: b,
            })
            .collect();
        let mut out: Vec<Exponent> = h_lattice_points(self.dim(), &halfspaces)
            .into_iter()
            .map(|x| {
                let px = mat_vec(&self.rays, &x);
                px.iter()
                    .zip(&a0)
                    .map(|(p, a)| u32::try_from(p + a).expect("exponent is nonnegative"))
                    .collect()
            })
            .collect();
        out.sort_by(grlex);
        Ok(out)
    }

    pub fn summary(&self) -> GradingSummary {
        GradingSummary {
            rays: self.rays.clone(),
            torsion: self.torsion(),
            free_rank: self.free_rank(),
            anticanonical: self.anticanonical(),
        }
    }
}

/// Graded lexicographic order: total degree first, then lexicographic.
pub fn grlex(a: &Exponent, b: &Exponent) -> std::cmp::Ordering {
    let sa: u32 = a.iter().sum();
    let sb: u32 = b.iter().sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixtures;

    #[test]
    fn octahedron_is_p1_cubed() {
        let g = CoxGrading::from_polytope(&fixtures::octahedron()).unwrap();
        assert_eq!(g.nvars(), 6);
        assert_eq!(g.free_rank(), 3);
        assert!(g.torsion().is_empty());
        // rays sorted: -e1, -e2, -e3, e3, e2, e1
        let r = g.rays();
        for i in 0..6 {
            let opposite = r.iter().position(|w| w.iter().zip(&r[i]).all(|(a, b)| *a == -b)).unwrap();
            assert_eq!(g.ray_degree(i), g.ray_degree(opposite));
        }
        let beta = g.anticanonical();
        assert_eq!(g.monomials_of_degree(&beta).unwrap().len(), 27);
    }

    #[test]
    fn skew_octahedron_torsion() {
        let g = CoxGrading::from_rays(fixtures::skew_octahedron().vertices().to_vec()).unwrap();
        assert_eq!(g.torsion(), vec![2, 2]);
        assert_eq!(g.free_rank(), 3);
        // z1/z4 is 2-torsion: nonzero, but its square is trivial
        let d = g.degree_of(&[1, 0, 0, -1, 0, 0]);
        assert_ne!(d, g.zero_degree());
        assert_eq!(g.degree_of(&[2, 0, 0, -2, 0, 0]), g.zero_degree());
        assert_eq!(g.degree_of(&[0, 2, 0, 0, -2, 0]), g.zero_degree());
        assert_eq!(g.degree_of(&[0, 0, 2, 0, 0, -2]), g.zero_degree());
    }

    #[test]
    fn anticanonical_monomials_match_dual_points() {
        for p in [
            fixtures::octahedron(),
            fixtures::cube(),
            fixtures::edge_octahedron(),
            fixtures::fourteen_vertex(),
            fixtures::square(),
        ] {
            let g = CoxGrading::from_polytope(&p).unwrap();
            let mons = g.monomials_of_degree(&g.anticanonical()).unwrap();
            assert_eq!(mons.len(), p.polar_dual().unwrap().lattice_points().len());
        }
    }

    #[test]
    fn degree_zero_and_bad_class() {
        let g = CoxGrading::from_polytope(&fixtures::edge_octahedron()).unwrap();
        let zero = g.monomials_of_degree(&g.zero_degree()).unwrap();
        assert_eq!(zero, vec![vec![0; 18]]);
        assert!(matches!(g.monomials_of_degree(&vec![1]), Err(Error::NoSuchDegree(_))));
    }

    #[test]
    fn pairing_columns_have_degree_zero() {
        let g = CoxGrading::from_polytope(&fixtures::fourteen_vertex()).unwrap();
        for k in 0..3 {
            let col: Vec<i64> = g.rays().iter().map(|v| v[k]).collect();
            assert_eq!(g.degree_of(&col), g.zero_degree());
        }
    }
}
