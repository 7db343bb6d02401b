//! Smith normal form with unimodular transforms.

use super::linalg::{dot, transpose, LatticeVector};

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Vec<Vec<i64>>,
    /// The inverse of `u`.
    pub u_inv: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    /// The `min(rows, cols)` diagonal entries.
    pub diagonal: Vec<i64>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }
}

struct Work {
    a: Vec<Vec<i64>>,
    u: Vec<Vec<i64>>,
    u_inv: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    // row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: i64) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            m[i].iter_mut().zip(src).for_each(|(x, y)| *x += k * y);
        }
        for row in self.u_inv.iter_mut() {
            row[j] -= k * row[i];
        }
    }

    // col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: i64) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[i] += k * row[j];
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a[i].iter_mut().for_each(|x| *x = -*x);
        self.u[i].iter_mut().for_each(|x| *x = -*x);
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i];
        }
    }
}

pub fn smith_normal_form(a: &[Vec<i64>], ncols: usize) -> SmithForm {
    let nrows = a.len();
    let mut w = Work {
        a: a.to_vec(),
        u: super::linalg::identity(nrows),
        u_inv: super::linalg::identity(nrows),
        v: super::linalg::identity(ncols),
    };
    let steps = nrows.min(ncols);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    let x = w.a[i][j].abs();
                    if x != 0 && best.is_none_or(|(bi, bj)| x < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[t][t];
            let mut dirty = false;
            for i in t + 1..nrows {
                let q = w.a[i][t].div_euclid(p);
                if q != 0 {
                    w.add_row(i, t, -q);
                }
                dirty |= w.a[i][t] != 0;
            }
            for j in t + 1..ncols {
                let q = w.a[t][j].div_euclid(p);
                if q != 0 {
                    w.add_col(j, t, -q);
                }
                dirty |= w.a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // enforce the divisibility chain
            let offender = (t + 1..nrows)
                .find(|&i| (t + 1..ncols).any(|j| w.a[i][j] % p != 0));
            match offender {
                Some(i) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if t < nrows && w.a[t][t] < 0 {
            w.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| w.a[i][i]).collect();
    SmithForm {
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        diagonal,
    }
}

/// A reduced basis of the sublattice `{x : <m, x> = 0}` of `Z^n`.
///
/// The basis comes from the last `n - 1` columns of the Smith transform of
/// `m` as a row; in rank 2 it is then Lagrange-reduced, and the vectors are
/// sign-normalized (first nonzero entry positive) and sorted in decreasing
/// lexicographic order.
pub fn kernel_basis(m: &[i64]) -> Vec<LatticeVector> {
    let n = m.len();
    let snf = smith_normal_form(&[m.to_vec()], n);
    let vt = transpose(&snf.v);
    let mut basis: Vec<LatticeVector> = vt[snf.rank()..].to_vec();
    if basis.len() == 2 {
        let (mut b1, mut b2) = (basis[0].clone(), basis[1].clone());
        loop {
            if dot(&b2, &b2) < dot(&b1, &b1) {
                std::mem::swap(&mut b1, &mut b2);
            }
            let num = dot(&b1, &b2);
            let den = dot(&b1, &b1);
            // nearest integer to num / den
            let mu = (2 * num + den).div_euclid(2 * den);
            if mu == 0 {
                break;
            }
            b2.iter_mut().zip(&b1).for_each(|(x, y)| *x -= mu * y);
        }
        basis = vec![b1, b2];
    }
    for b in &mut basis {
        if b.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            b.iter_mut().for_each(|x| *x = -*x);
        }
    }
    basis.sort_by(|a, b| b.cmp(a));
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::linalg::{det, mat_mul};

    fn check(a: &[Vec<i64>], ncols: usize) -> SmithForm {
        let s = smith_normal_form(a, ncols);
        let d = mat_mul(&mat_mul(&s.u, a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, s.diagonal[i]);
                } else {
                    assert_eq!(x, 0);
                }
            }
        }
        assert_eq!(det(&s.u).abs(), 1);
        assert_eq!(mat_mul(&s.u, &s.u_inv), crate::lattice::linalg::identity(a.len()));
        assert_eq!(det(&s.v).abs(), 1);
        for w in s.diagonal.windows(2) {
            assert!(w[1] == 0 || w[1] % w[0] == 0);
        }
        s
    }

    #[test]
    fn diagonal_chain() {
        let s = check(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(s.diagonal, vec![1, 6]);
        let s = check(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn skew_octahedron_rays() {
        let rays = vec![
            vec![1, 0, 0],
            vec![1, 2, 0],
            vec![1, 0, 2],
            vec![-1, 0, 0],
            vec![-1, -2, 0],
            vec![-1, 0, -2],
        ];
        let s = check(&rays, 3);
        assert_eq!(s.diagonal, vec![1, 2, 2]);
    }

    #[test]
    fn kernel() {
        assert_eq!(kernel_basis(&[0, 0, 1]), vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let b = kernel_basis(&[1, 2, 3]);
        assert_eq!(b.len(), 2);
        for v in &b {
            assert_eq!(dot(v, &[1, 2, 3]), 0);
        }
        // the basis generates the whole kernel lattice: its cross product is primitive
        let n = crate::lattice::linalg::normal_vector(&b);
        assert_eq!(n.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}
