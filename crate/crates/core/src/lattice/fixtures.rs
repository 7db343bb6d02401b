//! Polytopes used throughout the tests, the examples and the CLI docs.

use super::polytope::LatticePolytope;

fn poly(dim: usize, verts: &[&[i64]]) -> LatticePolytope {
    LatticePolytope::new(dim, verts.iter().map(|v| v.to_vec()).collect())
        .expect("fixture polytopes are full-dimensional")
}

/// Octahedron `conv(±e_i)`.
pub fn octahedron() -> LatticePolytope {
    poly(
        3,
        &[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ],
    )
}

/// Cube `[-1, 1]^3`.
pub fn cube() -> LatticePolytope {
    let mut v = Vec::new();
    for x in [-1, 1] {
        for y in [-1, 1] {
            for z in [-1, 1] {
                v.push(vec![x, y, z]);
            }
        }
    }
    LatticePolytope::new(3, v).unwrap()
}

/// Octahedron whose twelve edges each carry one interior lattice point. Its
/// dual is a parallelepiped with no lattice points besides the vertices and
/// the origin.
pub fn edge_octahedron() -> LatticePolytope {
    poly(
        3,
        &[
            &[1, 1, 1],
            &[-1, -1, 1],
            &[-1, 1, -1],
            &[1, -1, 1],
            &[1, 1, -1],
            &[-1, -1, -1],
        ],
    )
}

/// The reflexive polytope with fourteen vertices and twelve facets (the
/// maximum vertex count in rank 3). Its lattice points are the vertices and
/// the origin; the dual is the rhombic dodecahedron's lattice analogue with
/// thirteen points.
pub fn fourteen_vertex() -> LatticePolytope {
    poly(
        3,
        &[
            &[0, 0, 1],
            &[0, 0, -1],
            &[1, 1, -1],
            &[0, -1, 1],
            &[-1, 0, 1],
            &[1, 0, -1],
            &[0, 1, -1],
            &[-1, -1, 1],
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[-1, -1, 2],
            &[1, 1, -2],
        ],
    )
}

/// Square `[-1, 1]^2`.
pub fn square() -> LatticePolytope {
    poly(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])
}

/// Diamond `conv(±e_1, ±e_2)`.
pub fn diamond() -> LatticePolytope {
    poly(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])
}

/// The simplex spanned by `e_1, e_2, e_3` and `-(e_1 + e_2 + e_3)`.
pub fn simplex() -> LatticePolytope {
    poly(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]])
}

/// An octahedron whose vertices generate an index-4 sublattice, so its
/// class group has torsion.
pub fn skew_octahedron() -> LatticePolytope {
    poly(
        3,
        &[
            &[1, 0, 0],
            &[1, 2, 0],
            &[1, 0, 2],
            &[-1, 0, 0],
            &[-1, -2, 0],
            &[-1, 0, -2],
        ],
    )
}

/// `[-2, 2]^3`, which is not reflexive.
pub fn big_cube() -> LatticePolytope {
    let v = cube()
        .vertices()
        .iter()
        .map(|v| v.iter().map(|x| 2 * x).collect())
        .collect();
    LatticePolytope::new(3, v).unwrap()
}
