//! Reflexive sections of a reflexive polytope by lattice hyperplanes.

use serde::Serialize;

use super::linalg::{content, mat_vec, LatticeVector};
use super::polytope::{h_vertices, HalfSpace, LatticePolytope};
use super::snf::kernel_basis;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slice {
    /// Primitive normal `m`, lexicographically positive.
    pub normal: LatticeVector,
    /// Basis of `m^⊥` used for the polygon's coordinates.
    pub basis: Vec<LatticeVector>,
    /// `p ∩ m^⊥` in the coordinates of `basis`.
    pub polygon: LatticePolytope,
}

/// The section `p ∩ {<v, m> = 0}` in the coordinates of a reduced basis of
/// `m^⊥`, if that section is a reflexive lattice polytope.
pub fn slice(p: &LatticePolytope, m: &[i64]) -> Option<Slice> {
    let basis = kernel_basis(m);
    let d = basis.len();
    // facet <a, x> <= b becomes <B^T a, y> <= b
    let halfspaces: Vec<HalfSpace> = p
        .facets()
        .into_iter()
        .map(|h| HalfSpace {
            normal: mat_vec(&basis, &h.normal),
            bound: h.bound,
        })
        .collect();
    let verts = h_vertices(d, &halfspaces);
    let verts: Option<Vec<LatticeVector>> = verts.iter().map(|v| v.as_integral()).collect();
    let polygon = LatticePolytope::new(d, verts?).ok()?;
    polygon.is_reflexive().then(|| Slice {
        normal: m.to_vec(),
        basis,
        polygon,
    })
}

/// All primitive lexicographically positive `m` with entries in
/// `[-bound, bound]` whose section is reflexive, in lexicographic order.
pub fn reflexive_slices(p: &LatticePolytope, bound: i64) -> Result<Vec<Slice>> {
    p.require_reflexive()?;
    let n = p.dim();
    let mut out = Vec::new();
    let mut m = vec![-bound; n];
    loop {
        let positive = m.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if positive && content(&m) == 1 {
            if let Some(s) = slice(p, &m) {
                out.push(s);
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if m[k] < bound {
                m[k] += 1;
                for x in m.iter_mut().skip(k + 1) {
                    *x = -bound;
                }
                break;
            }
        }
    }
}
