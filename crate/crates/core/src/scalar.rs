//! Scalar traits shared by the polynomial and linear-algebra code.
//!
//! Everything in this crate is exact. The same elimination routines run over
//! the integers, the rationals, a word-sized prime field (used for cheap rank
//! profiles at a specialized parameter value), integer polynomials and
//! rational functions in the family parameter.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// A commutative ring with exact equality.
///
/// The `*_ref` methods exist so that heavy types (big integers, polynomials)
/// can avoid clones in inner loops; the defaults clone.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type embeds the integers")
    }
}

/// A ring where every nonzero element is invertible.
pub trait Field: Scalar + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        self.clone() / rhs.clone()
    }
}

/// An integral domain with exact division, as needed by fraction-free
/// elimination.
pub trait IntegralDomain: Scalar {
    /// `self / rhs`, assuming `rhs` divides `self` exactly.
    fn div_exact(&self, rhs: &Self) -> Self;

    /// Size measure used for pivot selection (smaller is preferred).
    fn pivot_weight(&self) -> usize;
}

impl Scalar for BigInt {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl IntegralDomain for BigInt {
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(self.is_multiple_of(rhs));
        self / rhs
    }

    fn pivot_weight(&self) -> usize {
        self.bits() as usize
    }
}

impl Scalar for BigRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Field for BigRational {
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

/// Integers modulo the prime `P` (which must be below 2^63).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ModP<const P: u64>(u64);

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

impl<const P: u64> ModP<P> {
    pub fn new(v: u64) -> Self {
        ModP(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Reduces an arbitrary-precision integer modulo `P`.
    pub fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        ModP(r.to_u64().expect("residue fits in u64"))
    }

    /// Reduces a rational number; `None` when the denominator vanishes mod `P`.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let d = Self::from_bigint(q.denom());
        if d.is_zero() {
            None
        } else {
            Some(Self::from_bigint(q.numer()) * d.inv())
        }
    }
}

impl<const P: u64> Debug for ModP<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for ModP<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for ModP<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        ModP(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for ModP<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ModP(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u64> Mul for ModP<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ModP(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for ModP<P> {
    type Output = Self;
    fn neg(self) -> Self {
        ModP(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for ModP<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero in prime field");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Zero for ModP<P> {
    fn zero() -> Self {
        ModP(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for ModP<P> {
    fn one() -> Self {
        ModP(1)
    }
}

impl<const P: u64> FromPrimitive for ModP<P> {
    fn from_i64(n: i64) -> Option<Self> {
        let r = n.rem_euclid(P as i64) as u64;
        Some(ModP(r))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(ModP(n % P))
    }
}

impl<const P: u64> Scalar for ModP<P> {
    fn add_ref(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
}

impl<const P: u64> Field for ModP<P> {}

pub(crate) fn is_negative(a: &BigInt) -> bool {
    a.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = ModP<MERSENNE_61>;

    #[test]
    fn prime_field_inverse() {
        let a = F::new(123_456_789);
        assert_eq!(a * a.inv(), F::one());
        assert_eq!(F::from_int(-1) + F::one(), F::zero());
    }

    #[test]
    fn rational_reduction() {
        let q = BigRational::new(BigInt::from(3), BigInt::from(4));
        let r = F::from_rational(&q).unwrap();
        assert_eq!(r * F::from_int(4), F::from_int(3));
    }
}
