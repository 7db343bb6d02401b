//! Symmetric squares of second-order operators and their inverse.

use num_traits::Zero;

use super::operator::DifferentialOperator;
use crate::arith::RationalFunction;
use crate::error::{Error, Result};
use crate::scalar::Field;

fn int(n: i64) -> RationalFunction {
    RationalFunction::from(n)
}

/// The third-order operator whose solutions are the products of pairs of
/// solutions of `a2 y'' + a1 y' + a0 y = 0`. Coefficients are returned as
/// computed, without rescaling.
pub fn symmetric_square(
    a2: &RationalFunction,
    a1: &RationalFunction,
    a0: &RationalFunction,
) -> Result<DifferentialOperator> {
    if a2.is_zero() {
        return Err(Error::DegenerateLeading);
    }
    let (d2, d1, d0) = (a2.derivative(), a1.derivative(), a0.derivative());
    let c3 = a2 * a2;
    let c2 = &(a1 * a2) * &int(3);
    let c1 = &(&(&(&(a0 * a2) * &int(4)) + &(&(a1 * a1) * &int(2))) + &(a2 * &d1)) - &(a1 * &d2);
    let c0 = &(&(&(a0 * a1) * &int(4)) + &(&(&d0 * a2) * &int(2))) - &(&(a0 * &d2) * &int(2));
    DifferentialOperator::new(vec![c0, c1, c2, c3])
}

/// Recovers `(a2, a1, a0)` with `symmetric_square(a2, a1, a0)` in the class of
/// `l`. The triple is returned cleared to coprime integer polynomials with
/// `a2` having positive leading coefficient.
pub fn symmetric_square_root(
    l: &DifferentialOperator,
) -> Result<(RationalFunction, RationalFunction, RationalFunction)> {
    if l.order() != 3 {
        return Err(Error::WrongOrder {
            expected: 3,
            got: l.order(),
        });
    }
    let m = l.monic();
    let (p0, p1, p2) = (&m.coeffs()[0], &m.coeffs()[1], &m.coeffs()[2]);
    // monic y'' + a1 y' + a0 y
    let a1 = p2.div_ref(&int(3));
    let a0 = (&(p1 - &(&(&a1 * &a1) * &int(2))) - &a1.derivative()).div_ref(&int(4));
    let expected = &(&(&a0 * &a1) * &int(4)) + &(&a0.derivative() * &int(2));
    if expected != *p0 {
        return Err(Error::NotASymmetricSquare);
    }
    let two = DifferentialOperator::new(vec![a0, a1, int(1)])?.canonical();
    let [b0, b1, b2]: [_; 3] = two.try_into().expect("order two");
    Ok((b2.to_rf(), b1.to_rf(), b0.to_rf()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rf;

    fn op(c: &[&str]) -> DifferentialOperator {
        DifferentialOperator::parse(c).unwrap()
    }

    #[test]
    fn trivial_squares() {
        let l = symmetric_square(&rf("1"), &rf("0"), &rf("0")).unwrap();
        assert_eq!(l, op(&["0", "0", "0", "1"]));
        let l = symmetric_square(&rf("1"), &rf("0"), &rf("5/3")).unwrap();
        assert_eq!(l, op(&["0", "20/3", "0", "1"]));
        assert_eq!(
            symmetric_square(&rf("0"), &rf("1"), &rf("1")),
            Err(Error::DegenerateLeading)
        );
    }

    #[test]
    fn octahedron_pencil_square() {
        let l = symmetric_square(&rf("t*(t^2-64)"), &rf("2*t^2-64"), &rf("t/4")).unwrap();
        // raw coefficients carry the extra factor t^2-64
        let raw: Vec<_> = l.coeffs().to_vec();
        assert_eq!(raw[3], rf("t^2*(t^2-64)^2"));
        assert_eq!(raw[2], rf("6*t*(t^2-32)*(t^2-64)"));
        assert_eq!(raw[1], rf("7*t^4-512*t^2+4096"));
        assert_eq!(raw[0], rf("t^3-64*t"));
        let expected = op(&["t", "7*t^2-64", "6*t*(t^2-32)", "t^2*(t^2-64)"]);
        assert!(l.same_class(&expected));
    }

    #[test]
    fn roots() {
        let l = op(&["t", "7*t^2-64", "6*t*(t^2-32)", "t^2*(t^2-64)"]);
        let (a2, a1, a0) = symmetric_square_root(&l).unwrap();
        assert_eq!((a2, a1, a0), (rf("4*t^3-256*t"), rf("8*t^2-256"), rf("t")));
        let (a2, a1, a0) = symmetric_square_root(&op(&["0", "0", "0", "1"])).unwrap();
        assert_eq!((a2, a1, a0), (rf("1"), rf("0"), rf("0")));
        assert_eq!(
            symmetric_square_root(&op(&["1", "1", "0", "1"])),
            Err(Error::NotASymmetricSquare)
        );
        assert_eq!(
            symmetric_square_root(&op(&["1", "1"])),
            Err(Error::WrongOrder { expected: 3, got: 1 })
        );
    }
}
