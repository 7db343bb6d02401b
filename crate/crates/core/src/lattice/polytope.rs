//! Lattice polytopes given by their vertices.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::linalg::{dot, normal_vector, primitive, rank, solve_rational, LatticeVector};
use crate::error::{Error, Result};

/// The half-space `<normal, x> <= bound`, with `normal` primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: LatticeVector,
    pub bound: i64,
}

impl HalfSpace {
    pub fn contains(&self, p: &[i64]) -> bool {
        dot(&self.normal, p) <= self.bound
    }

    pub fn is_tight(&self, p: &[i64]) -> bool {
        dot(&self.normal, p) == self.bound
    }
}

/// A full-dimensional lattice polytope with an irredundant vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPolytope")]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticeVector>,
}

#[derive(Deserialize)]
struct RawPolytope {
    dim: usize,
    vertices: Vec<LatticeVector>,
}

impl TryFrom<RawPolytope> for LatticePolytope {
    type Error = Error;

    fn try_from(raw: RawPolytope) -> Result<Self> {
        LatticePolytope::new(raw.dim, raw.vertices)
    }
}

/// Rational point `num / den` with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint {
    pub num: Vec<i64>,
    pub den: i64,
}

impl RationalPoint {
    pub fn as_integral(&self) -> Option<LatticeVector> {
        (self.den == 1).then(|| self.num.clone())
    }
}

fn facets_of_points(dim: usize, pts: &[LatticeVector]) -> Vec<HalfSpace> {
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    if pts.len() < dim {
        return Vec::new();
    }
    loop {
        let base = &pts[idx[0]];
        let rows: Vec<Vec<i64>> = idx[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let nv = normal_vector(&rows);
        if nv.iter().any(|&x| x != 0) {
            let nv = primitive(&nv);
            let c = dot(&nv, base);
            let (mut above, mut below) = (false, false);
            for p in pts {
                let s = dot(&nv, p);
                above |= s > c;
                below |= s < c;
            }
            if !(above && below) {
                let hs = if above {
                    HalfSpace {
                        normal: nv.iter().map(|x| -x).collect(),
                        bound: -c,
                    }
                } else {
                    HalfSpace { normal: nv, bound: c }
                };
                out.insert(hs);
            }
        }
        // next combination
        let mut k = dim;
        loop {
            if k == 0 {
                return out.into_iter().collect();
            }
            k -= 1;
            if idx[k] < pts.len() - dim + k {
                idx[k] += 1;
                for j in k + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Vertices of the bounded H-polytope `{x : <a_i, x> <= b_i}` in dimension
/// `dim`, sorted and without repetition.
pub fn h_vertices(dim: usize, halfspaces: &[HalfSpace]) -> Vec<RationalPoint> {
    let mut out = BTreeSet::new();
    let m = halfspaces.len();
    if m < dim {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let a: Vec<Vec<i64>> = idx.iter().map(|&i| halfspaces[i].normal.clone()).collect();
        let b: Vec<i64> = idx.iter().map(|&i| halfspaces[i].bound).collect();
        if let Some((num, den)) = solve_rational(&a, &b) {
            let feasible = halfspaces
                .iter()
                .all(|h| dot(&h.normal, &num) <= h.bound * den);
            if feasible {
                out.insert(RationalPoint { num, den });
            }
        }
        let mut k = dim;
        loop {
            if k == 0 {
                return out.into_iter().collect();
            }
            k -= 1;
            if idx[k] < m - dim + k {
                idx[k] += 1;
                for j in k + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Integer points of a bounded H-polytope, lexicographically sorted.
pub fn h_lattice_points(dim: usize, halfspaces: &[HalfSpace]) -> Vec<LatticeVector> {
    let verts = h_vertices(dim, halfspaces);
    if verts.is_empty() {
        return Vec::new();
    }
    let lo: Vec<i64> = (0..dim)
        .map(|k| verts.iter().map(|v| v.num[k].div_euclid(v.den)).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..dim)
        .map(|k| {
            verts
                .iter()
                .map(|v| -(-v.num[k]).div_euclid(v.den))
                .max()
                .unwrap()
        })
        .collect();
    box_scan(&lo, &hi, |p| halfspaces.iter().all(|h| h.contains(p)))
}

fn box_scan(lo: &[i64], hi: &[i64], keep: impl Fn(&[i64]) -> bool) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return out;
    }
    let mut p = lo.to_vec();
    loop {
        if keep(&p) {
            out.push(p.clone());
        }
        let mut k = p.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if p[k] < hi[k] {
                p[k] += 1;
                p[k + 1..].copy_from_slice(&lo[k + 1..]);
                break;
            }
        }
    }
}

impl LatticePolytope {
    /// The convex hull of `points`, which must span `Z^dim` affinely.
    /// Points that are not vertices are dropped; the surviving vertices keep
    /// their input order.
    pub fn new(dim: usize, points: Vec<LatticeVector>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Shape(format!(
                "point {p:?} does not have {dim} coordinates"
            )));
        }
        let mut uniq: Vec<LatticeVector> = Vec::new();
        for p in points {
            if !uniq.contains(&p) {
                uniq.push(p);
            }
        }
        if uniq.is_empty() {
            return Err(Error::Degenerate);
        }
        let diffs: Vec<Vec<i64>> = uniq
            .iter()
            .map(|p| p.iter().zip(&uniq[0]).map(|(a, b)| a - b).collect())
            .collect();
        if rank(&diffs) != dim {
            return Err(Error::Degenerate);
        }
        let facets = facets_of_points(dim, &uniq);
        let vertices = uniq
            .into_iter()
            .filter(|p| {
                let active: Vec<Vec<i64>> = facets
                    .iter()
                    .filter(|h| h.is_tight(p))
                    .map(|h| h.normal.clone())
                    .collect();
                rank(&active) == dim
            })
            .collect();
        Ok(LatticePolytope { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    /// Facet inequalities, sorted.
    pub fn facets(&self) -> Vec<HalfSpace> {
        facets_of_points(self.dim, &self.vertices)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.facets().iter().all(|h| h.contains(p))
    }

    /// Dimension of the smallest face containing `p`, or `None` if `p` lies
    /// outside the polytope.
    pub fn face_dimension(&self, p: &[i64]) -> Option<usize> {
        let facets = self.facets();
        if !facets.iter().all(|h| h.contains(p)) {
            return None;
        }
        let active: Vec<Vec<i64>> = facets
            .iter()
            .filter(|h| h.is_tight(p))
            .map(|h| h.normal.clone())
            .collect();
        Some(self.dim - rank(&active))
    }

    /// All lattice points, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        let facets = self.facets();
        let lo: Vec<i64> = (0..self.dim)
            .map(|k| self.vertices.iter().map(|v| v[k]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..self.dim)
            .map(|k| self.vertices.iter().map(|v| v[k]).max().unwrap())
            .collect();
        box_scan(&lo, &hi, |p| facets.iter().all(|h| h.contains(p)))
    }

    pub fn interior_lattice_points(&self) -> Vec<LatticeVector> {
        let facets = self.facets();
        self.lattice_points()
            .into_iter()
            .filter(|p| facets.iter().all(|h| dot(&h.normal, p) < h.bound))
            .collect()
    }

    pub fn has_interior_origin(&self) -> bool {
        self.facets().iter().all(|h| h.bound > 0)
    }

    /// The polar dual `{w : <v, w> >= -1 for all v}`, which must be a lattice
    /// polytope.
    pub fn polar_dual(&self) -> Result<LatticePolytope> {
        let facets = self.facets();
        if facets.iter().any(|h| h.bound <= 0) {
            return Err(Error::NotInterior);
        }
        let mut verts = Vec::with_capacity(facets.len());
        for h in &facets {
            if h.bound != 1 {
                return Err(Error::NotReflexive(format!(
                    "facet {:?} <= {} gives a non-integral dual vertex",
                    h.normal, h.bound
                )));
            }
            verts.push(h.normal.iter().map(|x| -x).collect());
        }
        LatticePolytope::new(self.dim, verts)
    }

    pub fn is_reflexive(&self) -> bool {
        let ok = self.facets().iter().all(|h| h.bound == 1);
        if ok {
            debug_assert_eq!(
                self.interior_lattice_points(),
                vec![vec![0; self.dim]],
                "a reflexive polytope has the origin as its only interior point"
            );
        }
        ok
    }

    /// Errors with `NotReflexive` unless the polytope is reflexive.
    pub fn require_reflexive(&self) -> Result<()> {
        if !self.has_interior_origin() {
            return Err(Error::NotReflexive(
                "the origin is not an interior point".into(),
            ));
        }
        self.polar_dual().map(|_| ())
    }

    /// Image under the linear map `x -> g x`.
    pub fn transform(&self, g: &[Vec<i64>]) -> Result<LatticePolytope> {
        let verts = self
            .vertices
            .iter()
            .map(|v| super::linalg::mat_vec(g, v))
            .collect();
        LatticePolytope::new(self.dim, verts)
    }

    /// Vertex set equality, ignoring order.
    pub fn same_vertex_set(&self, other: &LatticePolytope) -> bool {
        let a: BTreeSet<_> = self.vertices.iter().collect();
        let b: BTreeSet<_> = other.vertices.iter().collect();
        a == b
    }
}
