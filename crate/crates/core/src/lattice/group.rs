//! Lattice automorphism groups of polytopes and their orbits.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::linalg::{adjugate, det, identity, mat_mul, mat_vec, rank, transpose, LatticeVector};
use super::polytope::LatticePolytope;
use crate::error::{Error, Result};

/// An element of `GL(n, Z)` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeAutomorphism {
    matrix: Vec<Vec<i64>>,
}

impl LatticeAutomorphism {
    /// Errors unless `matrix` is square with determinant `±1`.
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("automorphism matrix must be square".into()));
        }
        if det(&matrix).abs() != 1 {
            return Err(Error::Shape("automorphism matrix must be unimodular".into()));
        }
        Ok(LatticeAutomorphism { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LatticeAutomorphism { matrix: identity(n) }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn det(&self) -> i64 {
        det(&self.matrix)
    }

    pub fn apply(&self, v: &[i64]) -> LatticeVector {
        mat_vec(&self.matrix, v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        LatticeAutomorphism {
            matrix: mat_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let matrix = adjugate(&self.matrix)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * d).collect())
            .collect();
        LatticeAutomorphism { matrix }
    }

    /// The contragredient action on the dual lattice, `(g^{-1})^T`, which
    /// preserves the pairing: `<g v, g* w> = <v, w>`.
    pub fn dual(&self) -> Self {
        LatticeAutomorphism {
            matrix: transpose(&self.inverse().matrix),
        }
    }
}

/// Every `g` in `GL(n, Z)` with `g · vertices(p) = vertices(p)`, sorted.
///
/// Candidates come from sending a fixed basis of vertices to every ordered
/// tuple of vertices and solving for `g`; integrality, unimodularity and
/// preservation of the whole vertex set are then checked.
pub fn automorphism_group(p: &LatticePolytope, orientation_preserving: bool) -> Vec<LatticeAutomorphism> {
    let n = p.dim();
    let verts = p.vertices();
    let vset: HashSet<&LatticeVector> = verts.iter().collect();

    let mut basis: Vec<usize> = Vec::new();
    for i in 0..verts.len() {
        let mut rows: Vec<Vec<i64>> = basis.iter().map(|&j| verts[j].clone()).collect();
        rows.push(verts[i].clone());
        if rank(&rows) == rows.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        }
    }
    assert_eq!(basis.len(), n, "a full-dimensional polytope with interior origin has a vertex basis");

    // B has the basis vertices as columns
    let b = transpose(&basis.iter().map(|&i| verts[i].clone()).collect::<Vec<_>>());
    let db = det(&b);
    let adj_b = adjugate(&b);

    let mut found = BTreeSet::new();
    let mut images = vec![0usize; n];
    loop {
        let distinct = (0..n).all(|i| (0..i).all(|j| images[i] != images[j]));
        if distinct {
            let bp = transpose(&images.iter().map(|&i| verts[i].clone()).collect::<Vec<_>>());
            let num = mat_mul(&bp, &adj_b);
            if num.iter().flatten().all(|x| x % db == 0) {
                let g: Vec<Vec<i64>> = num
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| x / db).collect())
                    .collect();
                let d = det(&g);
                let keep = d.abs() == 1
                    && (!orientation_preserving || d == 1)
                    && verts.iter().all(|v| vset.contains(&mat_vec(&g, v)));
                if keep {
                    found.insert(LatticeAutomorphism { matrix: g });
                }
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                let group: Vec<LatticeAutomorphism> = found.into_iter().collect();
                assert!(is_group(&group), "automorphism search produced a non-closed set");
                return group;
            }
            k -= 1;
            if images[k] + 1 < verts.len() {
                images[k] += 1;
                break;
            }
            images[k] = 0;
        }
    }
}

/// Closure under composition and inverse, and presence of the identity.
pub fn is_group(g: &[LatticeAutomorphism]) -> bool {
    let Some(first) = g.first() else {
        return false;
    };
    let set: HashSet<&LatticeAutomorphism> = g.iter().collect();
    set.contains(&LatticeAutomorphism::identity(first.matrix.len()))
        && g.iter().all(|a| set.contains(&a.inverse()))
        && g.iter().all(|a| g.iter().all(|b| set.contains(&a.compose(b))))
}

/// The contragredient group acting on the dual lattice.
pub fn dual_group(g: &[LatticeAutomorphism]) -> Vec<LatticeAutomorphism> {
    g.iter().map(LatticeAutomorphism::dual).collect()
}

/// A partition of a finite point set into group orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    /// Lexicographically sorted points.
    pub points: Vec<LatticeVector>,
    /// Orbit id of each point.
    pub orbit_index: Vec<usize>,
    /// Point indices per orbit. Orbits are numbered by their smallest point.
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn orbit_points(&self, o: usize) -> Vec<LatticeVector> {
        self.orbits[o].iter().map(|&i| self.points[i].clone()).collect()
    }

    pub fn orbit_of(&self, p: &[i64]) -> Option<usize> {
        self.points
            .binary_search_by(|q| q.as_slice().cmp(p))
            .ok()
            .map(|i| self.orbit_index[i])
    }
}

pub fn orbits(g: &[LatticeAutomorphism], pts: &[LatticeVector]) -> Result<OrbitPartition> {
    let mut points = pts.to_vec();
    points.sort();
    points.dedup();
    let pos: BTreeMap<&LatticeVector, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut orbit_index = vec![usize::MAX; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if orbit_index[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = BTreeSet::new();
        for h in g {
            let img = h.apply(&points[start]);
            let Some(&j) = pos.get(&img) else {
                return Err(Error::NotInvariant(format!(
                    "{:?} maps {:?} to {img:?}, which is not in the point set",
                    h.matrix, points[start]
                )));
            };
            members.insert(j);
        }
        members.insert(start);
        for &j in &members {
            orbit_index[j] = id;
        }
        orbits.push(members.into_iter().collect());
    }
    Ok(OrbitPartition {
        points,
        orbit_index,
        orbits,
    })
}

/// The permutation `σ` of `pts` with `g · pts[i] = pts[σ(i)]`, if `g`
/// preserves the set.
pub fn permutation(g: &LatticeAutomorphism, pts: &[LatticeVector]) -> Option<Vec<usize>> {
    let pos: BTreeMap<&LatticeVector, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    pts.iter().map(|p| pos.get(&g.apply(p)).copied()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixtures;

    fn sorted_sizes(p: &OrbitPartition) -> Vec<usize> {
        let mut s = p.sizes();
        s.sort();
        s
    }

    #[test]
    fn cube_group_orders() {
        let cube = fixtures::cube();
        assert_eq!(automorphism_group(&cube, false).len(), 48);
        assert_eq!(automorphism_group(&cube, true).len(), 24);
    }

    #[test]
    fn edge_octahedron_rotations() {
        let g = automorphism_group(&fixtures::edge_octahedron(), true);
        assert_eq!(g.len(), 24);
        assert!(g.iter().all(|h| h.det() == 1));
    }

    #[test]
    fn simplex_contains_coordinate_permutations() {
        let g = automorphism_group(&fixtures::simplex(), false);
        assert!(g.len() >= 6);
        assert!(is_group(&g));
        let swap = LatticeAutomorphism::new(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert!(g.contains(&swap));
    }

    #[test]
    fn cube_point_orbits() {
        let cube = fixtures::cube();
        let g = automorphism_group(&cube, true);
        let part = orbits(&g, &cube.lattice_points()).unwrap();
        assert_eq!(sorted_sizes(&part), vec![1, 6, 8, 12]);
        // numbering follows the smallest point: (-1,-1,-1) is a vertex
        assert_eq!(part.orbits[0].len(), 8);
    }

    #[test]
    fn dual_orbits_of_edge_octahedron() {
        let p = fixtures::edge_octahedron();
        let g = automorphism_group(&p, true);
        let dual = p.polar_dual().unwrap();
        let part = orbits(&dual_group(&g), &dual.lattice_points()).unwrap();
        assert_eq!(sorted_sizes(&part), vec![1, 8]);
    }

    #[test]
    fn fourteen_vertex_orbits() {
        let p = fixtures::fourteen_vertex();
        let g = automorphism_group(&p, true);
        assert_eq!(g.len(), 24);
        let part = orbits(&g, p.vertices()).unwrap();
        assert_eq!(sorted_sizes(&part), vec![6, 8]);
    }

    #[test]
    fn trivial_group_and_errors() {
        let pts = fixtures::cube().lattice_points();
        let part = orbits(&[LatticeAutomorphism::identity(3)], &pts).unwrap();
        assert_eq!(part.orbits.len(), 27);
        let g = automorphism_group(&fixtures::cube(), true);
        assert!(matches!(orbits(&g, &[vec![1, 0, 0]]), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn dual_action_preserves_pairing() {
        let g = automorphism_group(&fixtures::edge_octahedron(), false);
        let v = vec![1, 1, 1];
        let w = vec![0, -1, 0];
        for h in &g {
            let lhs = crate::lattice::linalg::dot(&h.apply(&v), &h.dual().apply(&w));
            assert_eq!(lhs, crate::lattice::linalg::dot(&v, &w));
        }
    }
}
