//! Truncated Laurent series with exact rational coefficients.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{Poly, RationalFunction};
use crate::error::{Error, Result};

/// `Σ_{k=val}^{prec-1} c_k x^k + O(x^prec)`.
///
/// Arithmetic tracks the precision exactly: a result only contains
/// coefficients that are determined by the known coefficients of the inputs.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    val: i64,
    coeffs: Vec<BigRational>,
}

/// Series in `s = 1/t`, the home of periods near `t = ∞`.
pub type TLaurentSeries = LaurentSeries;

impl LaurentSeries {
    /// Coefficients of `x^val, x^{val+1}, …`; the precision is
    /// `val + coeffs.len()`.
    pub fn new(val: i64, coeffs: Vec<BigRational>) -> Self {
        LaurentSeries { val, coeffs }
    }

    /// `O(x^prec)`.
    pub fn zero_to(prec: i64) -> Self {
        LaurentSeries {
            val: prec,
            coeffs: Vec::new(),
        }
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^e`, `None` when `e` is beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<BigRational> {
        if e >= self.prec() {
            None
        } else if e < self.val {
            Some(BigRational::zero())
        } else {
            Some(self.coeffs[(e - self.val) as usize].clone())
        }
    }

    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec() {
            return self.clone();
        }
        let keep = (prec - self.val).max(0) as usize;
        LaurentSeries {
            val: self.val.min(prec),
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec().min(other.prec());
        let val = self.val.min(other.val).min(prec);
        let coeffs = (val..prec)
            .map(|e| self.coeff(e).unwrap() + other.coeff(e).unwrap())
            .collect();
        LaurentSeries { val, coeffs }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.val + other.prec()).min(other.val + self.prec());
        let val = self.val + other.val;
        let len = (prec - val).max(0) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len.saturating_sub(i)) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentSeries {
            val: val.min(prec),
            coeffs,
        }
    }

    /// `x^k · self`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer((self.val + i as i64).into()))
            .collect();
        if self.val == 0 {
            // the constant term differentiates to nothing
            return match coeffs.split_first() {
                Some((_, rest)) => LaurentSeries::new(0, rest.to_vec()),
                None => Self::zero_to(-1),
            };
        }
        LaurentSeries {
            val: self.val - 1,
            coeffs,
        }
    }

    /// Strips leading zero coefficients.
    pub fn trimmed(&self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        LaurentSeries {
            val: self.val + lead as i64,
            coeffs: self.coeffs[lead..].to_vec(),
        }
    }

    /// Power series `1 / p` to precision `prec`, for `p(0) ≠ 0`.
    fn inverse_power_series(p: &[BigRational], prec: usize) -> Vec<BigRational> {
        let c0 = p[0].clone();
        let inv0 = BigRational::one() / &c0;
        let mut out: Vec<BigRational> = Vec::with_capacity(prec);
        for k in 0..prec {
            let mut acc = if k == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for i in 1..=k.min(p.len().saturating_sub(1)) {
                acc -= &p[i] * &out[k - i];
            }
            out.push(acc * &inv0);
        }
        out
    }

    fn from_quotient(num: &Poly<BigRational>, den: &Poly<BigRational>, prec: i64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let vn = num.coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
        let vd = den.coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
        if num.is_zero() {
            return Ok(Self::zero_to(prec));
        }
        let n = &num.coeffs()[vn as usize..];
        let d = &den.coeffs()[vd as usize..];
        let val = vn - vd;
        let len = (prec - val).max(0) as usize;
        let inv = Self::inverse_power_series(d, len);
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in n.iter().enumerate().take(len) {
            for (j, b) in inv.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        Ok(LaurentSeries {
            val: val.min(prec),
            coeffs,
        })
    }

    /// Expansion of `r(t)` in `s = 1/t` up to `O(s^prec)`.
    pub fn at_infinity(r: &RationalFunction, prec: i64) -> Self {
        let rev = |p: &crate::IntPoly| -> (Poly<BigRational>, i64) {
            let mut c: Vec<BigRational> = p
                .coeffs()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            c.reverse();
            (Poly::new(c), p.degree().unwrap_or(0) as i64)
        };
        if r.is_zero() {
            return Self::zero_to(prec);
        }
        // num(1/s) = s^{-deg num} rev(num)(s)
        let (n, dn) = rev(r.num());
        let (d, dd) = rev(r.den());
        let shift = dd - dn;
        Self::from_quotient(&n, &d, prec - shift)
            .expect("reversed denominator is nonzero")
            .shift(shift)
    }

    /// Expansion of `r(t)` in `x = t - a` up to `O(x^prec)`.
    pub fn at_point(r: &RationalFunction, a: &BigRational, prec: i64) -> Self {
        let n = r.num().taylor_shift(a);
        let d = r.den().taylor_shift(a);
        Self::from_quotient(&n, &d, prec).expect("denominator is nonzero")
    }

    /// The polynomial `Σ c_k x^k` (a power series known to all orders).
    pub fn from_poly(p: &Poly<BigRational>, prec: i64) -> Self {
        let coeffs = (0..prec.max(0))
            .map(|k| {
                p.coeffs()
                    .get(k as usize)
                    .cloned()
                    .unwrap_or_else(BigRational::zero)
            })
            .collect();
        LaurentSeries { val: 0, coeffs }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*x^{e}")?;
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(x^{})", self.prec())
    }
}
