//! Reduced rational functions in one variable with integer coefficients.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{IntPoly, Poly};
use crate::error::{Error, Result};
use crate::scalar::{Field, ModP, Scalar};

/// `num / den` with `gcd(num, den) = 1` in `Z[t]` and `lc(den) > 0`.
///
/// Because the representative is unique, derived equality is equality of
/// rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    /// Reduces `num / den` to its canonical representative.
    pub fn normalize(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_unchecked(num, den))
    }

    fn normalize_unchecked(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.checked_div(&g).expect("gcd divides numerator"),
                den.checked_div(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RationalFunction {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_poly(IntPoly::constant(n.into()))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::normalize_unchecked(
            IntPoly::constant(q.numer().clone()),
            IntPoly::constant(q.denom().clone()),
        )
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        Self::from_poly(IntPoly::var())
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` when the function is a rational constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(BigRational::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> Self {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalize_unchecked(top, &self.den * &self.den)
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_rational(x) / d)
    }

    /// Image in the prime field at `t = x`; `None` at a pole.
    pub fn eval_mod<const P: u64>(&self, x: ModP<P>) -> Option<ModP<P>> {
        let d = self.den.map(ModP::<P>::from_bigint).eval(&x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.map(ModP::<P>::from_bigint).eval(&x) / d)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_unchecked(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -rhs.clone() } else { rhs.clone() };
        }
        if self.den == rhs.den {
            let num = if negate {
                &self.num - &rhs.num
            } else {
                &self.num + &rhs.num
            };
            return Self::normalize_unchecked(num, self.den.clone());
        }
        let a = &self.num * &rhs.den;
        let b = &rhs.num * &self.den;
        let num = if negate { &a - &b } else { &a + &b };
        Self::normalize_unchecked(num, &self.den * &rhs.den)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::normalize_unchecked(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    /// Renders as `num`, `num/den`, `(num)/den`, `num/(den)` in expanded
    /// integer-coefficient form.
    pub fn render(&self, var: &str) -> String {
        let num = self.num.render(var);
        if self.den.is_one() {
            return num;
        }
        let den = self.den.render(var);
        let wrap = |s: String, p: &IntPoly| {
            let single_atom = p.term_count() == 1
                && (p.is_constant() || p.leading().is_some_and(|c| c.is_one()));
            if single_atom {
                s
            } else {
                format!("({s})")
            }
        };
        let num_part = if self.num.term_count() == 1 {
            num
        } else {
            format!("({num})")
        };
        format!("{}/{}", num_part, wrap(den, &self.den))
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }
}

impl FromPrimitive for RationalFunction {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::from_integer(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::from_integer(n))
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_impl(&rhs, false)
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_impl(&rhs, true)
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_impl(&rhs)
    }
}

impl Div for RationalFunction {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("rational function division by zero")
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.mul_impl(rhs)
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Scalar for RationalFunction {
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

impl Field for RationalFunction {
    fn div_ref(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("rational function division by zero")
    }
}

impl From<IntPoly> for RationalFunction {
    fn from(p: IntPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RF({})", self.render("t"))
    }
}

impl std::str::FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_rational_function(s, "t")
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Convenience for tests and fixtures: `rf("(7*t^2-64)/(t^2*(t^2-64))")`.
pub fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap_or_else(|e| panic!("bad rational function {s:?}: {e}"))
}

impl Poly<BigInt> {
    /// Lifts to a rational function.
    pub fn to_rf(&self) -> RationalFunction {
        RationalFunction::from_poly(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_ints(c)
    }

    #[test]
    fn normalize_examples() {
        let r = RationalFunction::normalize(p(&[-64, 0, 1]), p(&[0, -64, 0, 1])).unwrap();
        assert_eq!((r.num().clone(), r.den().clone()), (p(&[1]), p(&[0, 1])));

        let r = RationalFunction::normalize(p(&[]), p(&[0, 1])).unwrap();
        assert_eq!((r.num().clone(), r.den().clone()), (p(&[]), p(&[1])));

        let r = RationalFunction::normalize(p(&[2, 2]), p(&[4])).unwrap();
        assert_eq!((r.num().clone(), r.den().clone()), (p(&[1, 1]), p(&[2])));

        assert!(matches!(
            RationalFunction::normalize(p(&[1]), p(&[])),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn negative_denominator_is_flipped() {
        let r = RationalFunction::normalize(p(&[1]), p(&[0, -2])).unwrap();
        assert_eq!(r.to_string(), "-1/(2*t)");
    }

    #[test]
    fn serialization_is_reduced() {
        assert_eq!(rf("(t^2-64)/(t*(t^2-64))").to_string(), "1/t");
        assert_eq!(rf("6*(t^2-32)/(t*(t^2-64))").to_string(), "(6*t^2-192)/(t^3-64*t)");
        assert_eq!(rf("t/4").to_string(), "t/4");
        assert_eq!(rf("-3").to_string(), "-3");
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dt 1/t = -1/t^2
        assert_eq!(rf("1/t").derivative(), rf("-1/t^2"));
        assert_eq!(rf("t^3").derivative(), rf("3*t^2"));
    }

    #[test]
    fn field_identities() {
        let a = rf("(t+1)/(t-2)");
        let b = rf("t^2/(3*t+1)");
        assert_eq!(&(&a * &b) * &b.inv(), a);
        assert_eq!(&(&a + &b) - &b, a);
    }
}
