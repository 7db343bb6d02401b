//! Dense matrices and exact elimination.
//!
//! Two elimination routes are provided. `rf_linear_solve` and `rf_nullspace`
//! clear denominators row by row and run fraction-free (Bareiss) elimination
//! over `Z[t]`, choosing in each column the pivot of smallest degree. The
//! generic field routines (`solve_field`, `nullspace_field`, `rank_profile`)
//! run plain Gaussian elimination over any [`Field`]; they serve prime-field rank
//! profiles and act as the independent reference for the fraction-free path.
//!
//! Both routes process columns left to right, so the set of pivot columns is
//! the lexicographically first column basis. Free variables are set to zero,
//! which makes the returned particular solution independent of row pivoting.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::poly::IntPoly;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};
use crate::scalar::{Field, IntegralDomain, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: Vec<Vec<T>>,
    ncols: usize,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            rows: vec![vec![T::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows, ncols })
    }

    /// Builds from rows, fixing the column count explicitly (allows 0 rows).
    pub fn with_cols(rows: Vec<Vec<T>>, ncols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("row length differs from column count".into()));
        }
        Ok(Matrix { rows, ncols })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.rows[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
            ncols: self.ncols,
        }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix {
            rows: self
                .rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect(),
            ncols: cols.len(),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix {
            rows: rows.iter().map(|&r| self.rows[r].clone()).collect(),
            ncols: self.ncols,
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.ncols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.ncols
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| {
                r.iter().zip(x).fold(T::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add_ref(&a.mul_ref(b))
                    }
                })
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                out.rows[c][r] = v.clone();
            }
        }
        out
    }
}

/// Pivot structure of a matrix: the first column basis and the rows that
/// supplied each pivot (in original row numbering).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub pivot_cols: Vec<usize>,
    pub pivot_rows: Vec<usize>,
}

impl RankProfile {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Forward elimination over a field; returns the profile and the reduced rows
/// (row `k` of the result holds pivot `k`).
fn field_forward<F: Field>(m: &Matrix<F>, pivot_limit: usize) -> (RankProfile, Vec<Vec<F>>) {
    let mut rows: Vec<(usize, Vec<F>)> = m.rows.iter().cloned().enumerate().collect();
    let mut profile = RankProfile {
        pivot_cols: Vec::new(),
        pivot_rows: Vec::new(),
    };
    let mut rank = 0;
    for col in 0..pivot_limit.min(m.ncols) {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r].1[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank].1[col].inv();
        let pivot_row: Vec<F> = rows[rank].1.iter().map(|v| v.mul_ref(&inv)).collect();
        rows[rank].1 = pivot_row;
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank].1;
        for (_, row) in tail.iter_mut() {
            let f = row[col].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(prow).skip(col) {
                if !pv.is_zero() {
                    *v = v.sub_ref(&f.mul_ref(pv));
                }
            }
        }
        profile.pivot_cols.push(col);
        profile.pivot_rows.push(rows[rank].0);
        rank += 1;
    }
    (profile, rows.into_iter().map(|(_, r)| r).collect())
}

/// Column-first rank profile over a field.
pub fn rank_profile<F: Field>(m: &Matrix<F>) -> RankProfile {
    field_forward(m, m.ncols).0
}

fn back_substitute_field<F: Field>(
    reduced: &[Vec<F>],
    pivot_cols: &[usize],
    ncols: usize,
    rhs_col: Option<usize>,
    free: Option<usize>,
) -> Vec<F> {
    let mut x = vec![F::zero(); ncols];
    if let Some(f) = free {
        x[f] = F::one();
    }
    for (k, &pc) in pivot_cols.iter().enumerate().rev() {
        let row = &reduced[k];
        let mut acc = match rhs_col {
            Some(c) => row[c].clone(),
            None => F::zero(),
        };
        for (j, xj) in x.iter().enumerate().take(ncols).skip(pc + 1) {
            if !xj.is_zero() && !row[j].is_zero() {
                acc = acc.sub_ref(&row[j].mul_ref(xj));
            }
        }
        // pivot entries are normalized to one
        x[pc] = acc;
    }
    x
}

/// Solves `a x = b` over a field by Gaussian elimination.
pub fn solve_field<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Vec<F>> {
    if b.len() != a.nrows() {
        return Err(Error::Shape(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.nrows()
        )));
    }
    let n = a.ncols;
    let aug = Matrix {
        rows: a
            .rows
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut r = r.clone();
                r.push(bi.clone());
                r
            })
            .collect(),
        ncols: n + 1,
    };
    let (profile, reduced) = field_forward(&aug, n);
    if reduced[profile.rank()..].iter().any(|r| !r[n].is_zero()) {
        return Err(Error::NoSolution);
    }
    Ok(back_substitute_field(
        &reduced,
        &profile.pivot_cols,
        n,
        Some(n),
        None,
    ))
}

/// Basis of the right kernel over a field: one vector per free column, with
/// a one in that position.
pub fn nullspace_field<F: Field>(a: &Matrix<F>) -> Vec<Vec<F>> {
    let n = a.ncols;
    let (profile, reduced) = field_forward(a, n);
    (0..n)
        .filter(|c| !profile.pivot_cols.contains(c))
        .map(|f| back_substitute_field(&reduced, &profile.pivot_cols, n, None, Some(f)))
        .collect()
}

/// Fraction-free echelon form over an integral domain.
///
/// Only the first `pivot_limit` columns are eligible as pivots; later columns
/// (right-hand sides) are carried along. Within a column the pivot is the
/// entry of least [`IntegralDomain::pivot_weight`], ties to the lowest row.
pub struct FractionFree<D> {
    pub rows: Vec<Vec<D>>,
    pub pivot_cols: Vec<usize>,
}

const PARALLEL_THRESHOLD: usize = 24;

pub fn fraction_free_echelon<D: IntegralDomain>(
    mut rows: Vec<Vec<D>>,
    pivot_limit: usize,
) -> FractionFree<D> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = D::one();
    let mut rank = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..pivot_limit.min(ncols) {
        let best = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| (rows[r][col].pivot_weight(), r));
        let Some(p) = best else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let piv = &prow[col];
        let update = |row: &mut Vec<D>| {
            let a = row[col].clone();
            for j in col..ncols {
                let mut v = row[j].mul_ref(piv);
                if !a.is_zero() && !prow[j].is_zero() {
                    v = v.sub_ref(&a.mul_ref(&prow[j]));
                }
                row[j] = if v.is_zero() { v } else { v.div_exact(&prev) };
            }
        };
        if tail.len() * (ncols - col) >= PARALLEL_THRESHOLD * PARALLEL_THRESHOLD {
            tail.par_iter_mut().for_each(update);
        } else {
            tail.iter_mut().for_each(update);
        }
        prev = rows[rank][col].clone();
        pivot_cols.push(col);
        rank += 1;
    }
    FractionFree { rows, pivot_cols }
}

fn lcm(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let g = a.gcd(b);
    let l = (a * b).checked_div(&g).expect("gcd divides product");
    if l.leading().is_some_and(crate::scalar::is_negative) {
        -l
    } else {
        l
    }
}

/// Multiplies a row of rational functions by the lcm of its denominators.
fn clear_row(row: &[RationalFunction]) -> Vec<IntPoly> {
    let l = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(IntPoly::one(), |acc, v| {
            if v.den().is_one() {
                acc
            } else {
                lcm(&acc, v.den())
            }
        });
    row.iter()
        .map(|v| {
            if v.is_zero() {
                IntPoly::zero()
            } else {
                &l.checked_div(v.den()).expect("lcm is a multiple") * v.num()
            }
        })
        .collect()
}

pub type RFMatrix = Matrix<RationalFunction>;

fn back_substitute_ff(
    ff: &FractionFree<IntPoly>,
    ncols: usize,
    rhs_col: Option<usize>,
    free: Option<usize>,
) -> Vec<RationalFunction> {
    let mut x = vec![RationalFunction::zero(); ncols];
    if let Some(f) = free {
        x[f] = RationalFunction::one();
    }
    for (k, &pc) in ff.pivot_cols.iter().enumerate().rev() {
        let row = &ff.rows[k];
        let mut acc = match rhs_col {
            Some(c) => RationalFunction::from_poly(row[c].clone()),
            None => RationalFunction::zero(),
        };
        for (j, xj) in x.iter().enumerate().take(ncols).skip(pc + 1) {
            if !xj.is_zero() && !row[j].is_zero() {
                acc = acc.sub_ref(&xj.mul_ref(&RationalFunction::from_poly(row[j].clone())));
            }
        }
        x[pc] = acc.div_ref(&RationalFunction::from_poly(row[pc].clone()));
    }
    x
}

/// Solves `a x = b_k` for several right-hand sides at once. Fails with
/// `NoSolution` if any of the systems is inconsistent.
pub fn rf_solve_many(
    a: &RFMatrix,
    rhs: &[Vec<RationalFunction>],
) -> Result<Vec<Vec<RationalFunction>>> {
    if let Some(b) = rhs.iter().find(|b| b.len() != a.nrows()) {
        return Err(Error::Shape(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.nrows()
        )));
    }
    let n = a.ncols();
    let rows: Vec<Vec<IntPoly>> = a
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut full = r.clone();
            full.extend(rhs.iter().map(|b| b[i].clone()));
            clear_row(&full)
        })
        .collect();
    let ff = fraction_free_echelon(rows, n);
    let rank = ff.pivot_cols.len();
    let inconsistent = ff.rows[rank..]
        .iter()
        .any(|r| r[n..].iter().any(|v| !v.is_zero()));
    if inconsistent {
        return Err(Error::NoSolution);
    }
    Ok((0..rhs.len())
        .map(|k| back_substitute_ff(&ff, n, Some(n + k), None))
        .collect())
}

/// Exact solution of `a x = b` over `Q(t)`; free variables are zero.
pub fn rf_linear_solve(a: &RFMatrix, b: &[RationalFunction]) -> Result<Vec<RationalFunction>> {
    Ok(rf_solve_many(a, std::slice::from_ref(&b.to_vec()))?.remove(0))
}

/// Scales a kernel vector to coprime integer polynomials whose first nonzero
/// entry has positive leading coefficient.
pub fn canonicalize_vector(v: &[RationalFunction]) -> Vec<RationalFunction> {
    let cleared = clear_row(v);
    let g = cleared
        .iter()
        .fold(IntPoly::zero(), |acc, p| if p.is_zero() { acc } else { acc.gcd(p) });
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<IntPoly> = cleared
        .iter()
        .map(|p| p.checked_div(&g).expect("gcd divides entries"))
        .collect();
    let negative = out
        .iter()
        .find(|p| !p.is_zero())
        .and_then(|p| p.leading())
        .is_some_and(crate::scalar::is_negative);
    if negative {
        out = out.into_iter().map(|p| -p).collect();
    }
    out.into_iter().map(RationalFunction::from_poly).collect()
}

/// Basis of `{x : a x = 0}` over `Q(t)`, one vector per free column, each in
/// canonical scaling.
pub fn rf_nullspace(a: &RFMatrix) -> Vec<Vec<RationalFunction>> {
    let n = a.ncols();
    let rows: Vec<Vec<IntPoly>> = a.rows().iter().map(|r| clear_row(r)).collect();
    let ff = fraction_free_echelon(rows, n);
    (0..n)
        .filter(|c| !ff.pivot_cols.contains(c))
        .map(|f| canonicalize_vector(&back_substitute_ff(&ff, n, None, Some(f))))
        .collect()
}

pub fn rf_rank(a: &RFMatrix) -> usize {
    let rows: Vec<Vec<IntPoly>> = a.rows().iter().map(|r| clear_row(r)).collect();
    fraction_free_echelon(rows, a.ncols()).pivot_cols.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rf;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn m(rows: &[&[&str]]) -> RFMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| rf(s)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn v(xs: &[&str]) -> Vec<RationalFunction> {
        xs.iter().map(|s| rf(s)).collect()
    }

    #[test]
    fn triangular_solve() {
        let a = m(&[&["t", "1"], &["0", "t"]]);
        assert_eq!(rf_linear_solve(&a, &v(&["1", "0"])).unwrap(), v(&["1/t", "0"]));
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&["1", "1"], &["1", "1"]]);
        assert!(matches!(
            rf_linear_solve(&a, &v(&["1", "0"])),
            Err(Error::NoSolution)
        ));
    }

    #[test]
    fn underdetermined_uses_leftmost_pivots() {
        let a = m(&[&["t", "t^2"], &["1", "t"]]);
        let b = v(&["t^3+t", "t^2+1"]);
        let x = rf_linear_solve(&a, &b).unwrap();
        assert_eq!(x, v(&["t^2+1", "0"]));
        assert_eq!(a.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn shape_errors() {
        let a = m(&[&["1", "0"], &["0", "1"]]);
        assert!(matches!(rf_linear_solve(&a, &v(&["1"])), Err(Error::Shape(_))));
        assert!(Matrix::from_rows(vec![v(&["1"]), v(&["1", "2"])]).is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert!(rf_nullspace(&m(&[&["1", "0"], &["0", "1"]])).is_empty());
        assert_eq!(rf_nullspace(&m(&[&["t", "t^2"]])), vec![v(&["t", "-1"])]);
    }

    #[test]
    fn nullspace_of_rank_two_map() {
        let a = m(&[&["1", "t", "2"], &["t", "1", "t-1"]]);
        let basis = rf_nullspace(&a);
        assert_eq!(basis.len(), 1);
        assert!(a.mul_vec(&basis[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn integer_bareiss_determinant() {
        // the last pivot of a full-rank Bareiss echelon is +-det = +-21
        let rows = vec![
            vec![BigInt::from(2), BigInt::from(1), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(-1), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(5), BigInt::from(7)],
        ];
        let ff = fraction_free_echelon(rows, 3);
        assert_eq!(ff.pivot_cols, vec![0, 1, 2]);
        assert_eq!(num_traits::Signed::abs(&ff.rows[2][2]), BigInt::from(21));
    }

    #[test]
    fn field_routes_agree_on_rationals() {
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        let a = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        let x = solve_field(&a, &[q(5), q(6)]).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![q(5), q(6)]);
        assert_eq!(rank_profile(&a).pivot_cols, vec![0, 1]);
    }
}
