//! Small dense integer linear algebra on `i64` vectors and matrices.
//!
//! Matrices here are at most a few dozen entries across, and entries stay in
//! single digits, so plain machine integers are enough. Intermediate
//! determinants are formed in `i128`.

use num_integer::Integer;

/// A point of `Z^n`.
pub type LatticeVector = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| dot(row, v)).collect()
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflows i64")
}

fn minor(m: &[Vec<i64>], skip_row: usize, skip_col: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Adjugate matrix, so that `m * adj(m) = det(m) * I`.
pub fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = det(&minor(m, i, j));
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

/// Inverse of a unimodular matrix, `None` if `det` is not `±1`.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let d = det(m);
    if d.abs() != 1 {
        return None;
    }
    Some(
        adjugate(m)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x * d).collect())
            .collect(),
    )
}

/// A vector orthogonal to the `n - 1` rows of an `(n-1) x n` matrix (the
/// generalized cross product). Zero when the rows are dependent.
pub fn normal_vector(rows: &[Vec<i64>]) -> Vec<i64> {
    let n = rows.len() + 1;
    (0..n)
        .map(|j| {
            let sub: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let c = det(&sub);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..a.len() {
            if a[i][c] != 0 {
                let (x, y) = (a[r][c], a[i][c]);
                for j in c..ncols {
                    a[i][j] = a[i][j] * x - a[r][j] * y;
                }
                let g = a[i].iter().fold(0i128, |g, v| g.gcd(v));
                if g > 1 {
                    a[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        r += 1;
    }
    r
}

pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

/// `v` divided by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = content(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Solves the square system `a x = b` over `Q` by Cramer's rule.
/// The solution is returned as a numerator vector over a positive common
/// denominator, reduced. `None` if `a` is singular.
pub fn solve_rational(a: &[Vec<i64>], b: &[i64]) -> Option<(Vec<i64>, i64)> {
    let d = det(a);
    if d == 0 {
        return None;
    }
    let adj = adjugate(a);
    let mut num = mat_vec(&adj, b);
    let mut den = d;
    if den < 0 {
        den = -den;
        num.iter_mut().for_each(|x| *x = -*x);
    }
    let g = content(&num).gcd(&den);
    if g > 1 {
        num.iter_mut().for_each(|x| *x /= g);
        den /= g;
    }
    Some((num, den))
}
