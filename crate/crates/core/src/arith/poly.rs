//! Dense univariate polynomials in the family parameter `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::scalar::{Field, IntegralDomain, Scalar};

/// `coeffs[i]` is the coefficient of `t^i`; the vector never has trailing
/// zeros, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&C::from_int(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// Coefficient-wise image under a ring map.
    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            out.push(match (a, b, negate) {
                (Some(a), Some(b), false) => a.add_ref(b),
                (Some(a), Some(b), true) => a.sub_ref(b),
                (Some(a), None, _) => a.clone(),
                (None, Some(b), false) => b.clone(),
                (None, Some(b), true) => -b.clone(),
                (None, None, _) => unreachable!(),
            });
        }
        Self::new(out)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_impl(self);
        }
        acc
    }
}

impl<C: Field> Poly<C> {
    /// Euclidean division over a field.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lc_inv = d.leading().unwrap().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![C::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].mul_ref(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = r[k - dd + j].sub_ref(&c.mul_ref(dc));
            }
            q[k - dd] = c;
        }
        (Self::new(q), Self::new(r))
    }
}

/// Integer-coefficient polynomials.
pub type IntPoly = Poly<BigInt>;

impl Poly<BigInt> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// gcd of the coefficients (zero for the zero polynomial), always >= 0.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and fixes the sign so the leading coefficient
    /// is positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    pub fn div_scalar(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-division by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading().unwrap().clone();
            // r <- lc * r - c * t^(rd-dd) * d
            r = r.scale(&lc).add_impl(&d.scale(&c).shift(rd - dd), true);
        }
        r
    }

    /// Greatest common divisor in `Z[t]`, normalized with positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// Exact division; `None` if `d` does not divide `self` in `Z[t]`.
    pub fn checked_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree().expect("division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let (c, rem) = r[k].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &c * dc;
            }
            q[k - dd] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Substitutes `t -> t + a`.
    pub fn taylor_shift(&self, a: &BigRational) -> Poly<BigRational> {
        let x = Poly::new(vec![a.clone(), BigRational::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            acc * x.clone() + Poly::constant(BigRational::from_integer(c.clone()))
        })
    }
}

impl IntegralDomain for Poly<BigInt> {
    fn div_exact(&self, rhs: &Self) -> Self {
        self.checked_div(rhs)
            .expect("inexact division in fraction-free elimination")
    }

    fn pivot_weight(&self) -> usize {
        self.degree().unwrap_or(0)
    }
}

impl<C: Scalar> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Scalar> One for Poly<C> {
    fn one() -> Self {
        Poly {
            coeffs: vec![C::one()],
        }
    }
}

impl<C: Scalar> FromPrimitive for Poly<C> {
    fn from_i64(n: i64) -> Option<Self> {
        C::from_i64(n).map(Self::constant)
    }
    fn from_u64(n: u64) -> Option<Self> {
        C::from_u64(n).map(Self::constant)
    }
}

impl<C: Scalar> Add for Poly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_impl(&rhs, false)
    }
}

impl<C: Scalar> Sub for Poly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_impl(&rhs, true)
    }
}

impl<C: Scalar> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_impl(&rhs)
    }
}

impl<'a, C: Scalar> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.add_impl(rhs, false)
    }
}

impl<'a, C: Scalar> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.add_impl(rhs, true)
    }
}

impl<'a, C: Scalar> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.mul_impl(rhs)
    }
}

impl<C: Scalar> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<C: Scalar> Scalar for Poly<C> {
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, false)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, true)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
}

impl<C: Scalar + fmt::Display> Poly<C> {
    /// Renders with an explicit variable name, highest power first, e.g.
    /// `7*t^2-64`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            match k {
                0 => out.push_str(&mag),
                _ => {
                    if mag != "1" {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push('^');
                        out.push_str(&k.to_string());
                    }
                }
            }
        }
        out
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}
