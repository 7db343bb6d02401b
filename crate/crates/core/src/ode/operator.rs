//! Linear differential operators `Σ c_j ∂^j` with coefficients in `Q(t)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::series::LaurentSeries;
use crate::arith::{canonicalize_vector, IntPoly, Poly, RationalFunction};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// `c_0 + c_1 ∂ + ⋯ + c_r ∂^r` with `c_r ≠ 0`, `∂ = d/dt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOperator")]
pub struct DifferentialOperator {
    coeffs: Vec<RationalFunction>,
}

#[derive(Deserialize)]
struct RawOperator {
    coeffs: Vec<RationalFunction>,
}

impl TryFrom<RawOperator> for DifferentialOperator {
    type Error = Error;
    fn try_from(r: RawOperator) -> Result<Self> {
        DifferentialOperator::new(r.coeffs)
    }
}

impl DifferentialOperator {
    pub fn new(coeffs: Vec<RationalFunction>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if !c.is_zero() => Ok(DifferentialOperator { coeffs }),
            _ => Err(Error::DegenerateLeading),
        }
    }

    /// Parses each coefficient from the string format, lowest order first.
    pub fn parse(coeffs: &[&str]) -> Result<Self> {
        Self::new(coeffs.iter().map(|s| s.parse()).collect::<Result<_>>()?)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn leading(&self) -> &RationalFunction {
        self.coeffs.last().unwrap()
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        let lc = self.leading().clone();
        DifferentialOperator {
            coeffs: self.coeffs.iter().map(|c| c.div_ref(&lc)).collect(),
        }
    }

    /// Coprime integer polynomials, leading coefficient of the top one
    /// positive. Two operators have the same canonical form iff one is a
    /// `Q(t)`-multiple of the other.
    pub fn canonical(&self) -> Vec<IntPoly> {
        let mut rev = self.coeffs.clone();
        rev.reverse();
        // canonicalize_vector fixes the sign of the first nonzero entry
        let mut out: Vec<IntPoly> = canonicalize_vector(&rev)
            .into_iter()
            .map(|c| c.num().clone())
            .collect();
        out.reverse();
        out
    }

    /// The canonical form as an operator.
    pub fn canonical_operator(&self) -> Self {
        DifferentialOperator {
            coeffs: self.canonical().into_iter().map(RationalFunction::from_poly).collect(),
        }
    }

    pub fn same_class(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Human-readable monic form, e.g. `w'' + (1/t) w' + w`.
    pub fn render(&self) -> String {
        let m = self.monic();
        let mut parts = Vec::new();
        for (j, c) in m.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let w = format!("w{}", "'".repeat(j));
            if c.is_one() {
                parts.push(w);
            } else {
                parts.push(format!("({}) {w}", c.render("t")));
            }
        }
        parts.join(" + ")
    }

    /// `L(y)` for a series in `s = 1/t`. Coefficients are cleared to
    /// polynomials first, so the result is determined up to its precision.
    pub fn apply_at_infinity(&self, y: &LaurentSeries) -> LaurentSeries {
        let cleared = self.canonical();
        let mut derivs = vec![y.clone()];
        for _ in 0..self.order() {
            // d/dt = -s^2 d/ds
            let d = derivs.last().unwrap().derivative().shift(2).neg();
            derivs.push(d);
        }
        let mut acc: Option<LaurentSeries> = None;
        for (c, d) in cleared.iter().zip(&derivs) {
            if c.is_zero() {
                continue;
            }
            let deg = c.degree().unwrap() as i64;
            // c(1/s) = s^{-deg} rev(c)(s), known exactly
            let mut rev: Vec<BigRational> =
                c.coeffs().iter().map(|x| BigRational::from_integer(x.clone())).collect();
            rev.reverse();
            let term = exact_times(&LaurentSeries::new(-deg, rev), d);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.expect("leading coefficient is nonzero")
    }

    /// `L(y)` for a power series in `x = t - point`.
    pub fn apply_at_point(&self, point: &BigRational, y: &LaurentSeries) -> LaurentSeries {
        let cleared = self.canonical();
        let mut d = y.clone();
        let mut acc: Option<LaurentSeries> = None;
        for c in cleared.iter() {
            if !c.is_zero() {
                let shifted = c.taylor_shift(point);
                let term = poly_times(&shifted, &d);
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
            d = d.derivative();
        }
        acc.expect("leading coefficient is nonzero")
    }
}

/// `c · y` where `c` is a Laurent polynomial, known to all orders.
fn exact_times(c: &LaurentSeries, y: &LaurentSeries) -> LaurentSeries {
    let prec = c.val() + y.prec();
    let val = c.val() + y.val();
    let mut out = vec![BigRational::zero(); (prec - val).max(0) as usize];
    for (i, a) in c.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coeffs().iter().enumerate() {
            if i + j < out.len() {
                out[i + j] += a * b;
            }
        }
    }
    LaurentSeries::new(val, out)
}

fn poly_times(p: &Poly<BigRational>, y: &LaurentSeries) -> LaurentSeries {
    let v = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let c = LaurentSeries::new(v as i64, p.coeffs()[v..].to_vec());
    exact_times(&c, y)
}

/// Outcome of applying an operator to a truncated series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilationReport {
    pub annihilates: bool,
    /// Number of coefficients of `L(y)` that are fully determined.
    pub checked: usize,
    /// Coefficients lost to truncation and left out of the check.
    pub excluded: usize,
    /// Exponent and value of the first nonzero determined coefficient.
    pub first_nonzero: Option<(i64, String)>,
}

fn report(residual: &LaurentSeries, nominal_prec: i64) -> Result<AnnihilationReport> {
    let checked = residual.coeffs().len();
    if checked == 0 {
        return Err(Error::TruncationTooShort(format!(
            "no coefficient of the residual is determined below x^{}",
            residual.prec()
        )));
    }
    let first_nonzero = residual
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .map(|(i, c)| (residual.val() + i as i64, c.to_string()));
    Ok(AnnihilationReport {
        annihilates: first_nonzero.is_none(),
        checked,
        excluded: (nominal_prec - residual.prec()).max(0) as usize,
        first_nonzero,
    })
}

/// Applies `L` to a series in `s = 1/t` and checks every determined
/// coefficient of the result.
pub fn annihilates(l: &DifferentialOperator, y: &LaurentSeries) -> Result<AnnihilationReport> {
    let r = l.apply_at_infinity(y);
    report(&r, y.prec() + l.order() as i64)
}

/// As [`annihilates`], for a power series in `t - point`.
pub fn annihilates_at(
    l: &DifferentialOperator,
    point: &BigRational,
    y: &LaurentSeries,
) -> Result<AnnihilationReport> {
    let r = l.apply_at_point(point, y);
    report(&r, y.prec())
}

/// `Q = R - P'/2 - P^2/4` for `y'' + P y' + R y`.
pub fn projective_normal_form(
    a2: &RationalFunction,
    a1: &RationalFunction,
    a0: &RationalFunction,
) -> Result<RationalFunction> {
    if a2.is_zero() {
        return Err(Error::DegenerateLeading);
    }
    let p = a1.div_ref(a2);
    let r = a0.div_ref(a2);
    let half = RationalFunction::from_rational(&BigRational::new(1.into(), 2.into()));
    let quarter = RationalFunction::from_rational(&BigRational::new(1.into(), 4.into()));
    Ok(&(&r - &(&p.derivative() * &half)) - &(&(&p * &p) * &quarter))
}

/// Fundamental solutions of `a2 y'' + a1 y' + a0 y = 0` at an ordinary
/// point, with initial data `(1, 0)` and `(0, 1)`, to `O(x^n)`.
pub fn local_series_solutions(
    a2: &RationalFunction,
    a1: &RationalFunction,
    a0: &RationalFunction,
    point: &BigRational,
    n: usize,
) -> Result<(LaurentSeries, LaurentSeries)> {
    if a2.is_zero() {
        return Err(Error::DegenerateLeading);
    }
    if a2.num().eval_rational(point).is_zero() {
        return Err(Error::SingularPoint(point.to_string()));
    }
    let prec = n as i64;
    let p = LaurentSeries::at_point(&a1.div_ref(a2), point, prec);
    let r = LaurentSeries::at_point(&a0.div_ref(a2), point, prec);
    let coeff = |s: &LaurentSeries, k: usize| s.coeff(k as i64).unwrap_or_else(BigRational::zero);
    let solve = |y0: BigRational, y1: BigRational| {
        let mut y = vec![y0, y1];
        y.truncate(n);
        for k in 0..n.saturating_sub(2) {
            // (k+2)(k+1) y_{k+2} = -Σ p_i (k-i+1) y_{k-i+1} - Σ r_i y_{k-i}
            let mut acc = BigRational::zero();
            for i in 0..=k {
                let j = k - i + 1;
                acc -= coeff(&p, i) * &y[j] * BigRational::from_integer(BigInt::from(j));
                acc -= coeff(&r, i) * &y[k - i];
            }
            y.push(acc / BigRational::from_integer(BigInt::from((k + 2) * (k + 1))));
        }
        LaurentSeries::new(0, y)
    };
    Ok((
        solve(BigRational::one(), BigRational::zero()),
        solve(BigRational::zero(), BigRational::one()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rf;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn degenerate_leading() {
        assert_eq!(DifferentialOperator::parse(&["1", "0"]), Err(Error::DegenerateLeading));
        assert_eq!(DifferentialOperator::new(vec![]), Err(Error::DegenerateLeading));
    }

    #[test]
    fn canonical_form() {
        let l = DifferentialOperator::parse(&["1/(t*(t^2-64))", "(7*t^2-64)/(t^2*(t^2-64))", "6*(t^2-32)/(t*(t^2-64))", "1"]).unwrap();
        let c = l.canonical();
        assert_eq!(c[3], IntPoly::from_ints(&[0, 0, -64, 0, 1]));
        assert_eq!(c[0], IntPoly::from_ints(&[0, 1]));
        let neg = DifferentialOperator::new(l.coeffs().iter().map(|x| -x.clone()).collect()).unwrap();
        assert!(neg.same_class(&l));
    }

    #[test]
    fn json_round_trip() {
        let l = DifferentialOperator::parse(&["1/t", "0", "1"]).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"coeffs":["1/t","0","1"]}"#);
        assert_eq!(serde_json::from_str::<DifferentialOperator>(&s).unwrap(), l);
        assert!(serde_json::from_str::<DifferentialOperator>(r#"{"coeffs":["1","0"]}"#).is_err());
    }

    #[test]
    fn render_monic() {
        let l = DifferentialOperator::parse(&["2", "2/t", "2"]).unwrap();
        assert_eq!(l.render(), "w'' + (1/t) w' + w");
    }

    #[test]
    fn derivative_of_inverse_t() {
        let l = DifferentialOperator::parse(&["0", "1"]).unwrap();
        let y = LaurentSeries::at_infinity(&rf("1/t"), 10);
        let rep = annihilates(&l, &y).unwrap();
        assert!(!rep.annihilates);
        assert_eq!(rep.first_nonzero, Some((2, "-1".to_string())));
        // t * d/dt + 1 kills 1/t
        let l = DifferentialOperator::parse(&["1", "t"]).unwrap();
        assert!(annihilates(&l, &y).unwrap().annihilates);
    }

    #[test]
    fn too_short() {
        let l = DifferentialOperator::parse(&["0", "0", "0", "1"]).unwrap();
        let y = LaurentSeries::new(0, vec![q(1), q(1)]);
        assert!(matches!(annihilates_at(&l, &q(0), &y), Err(Error::TruncationTooShort(_))));
        assert!(matches!(annihilates(&l, &LaurentSeries::zero_to(1)), Err(Error::TruncationTooShort(_))));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(projective_normal_form(&rf("1"), &rf("0"), &rf("t^3")).unwrap(), rf("t^3"));
        assert_eq!(projective_normal_form(&rf("1"), &rf("t"), &rf("0")).unwrap(), rf("-t^2/4-1/2"));
        assert_eq!(projective_normal_form(&rf("0"), &rf("t"), &rf("0")), Err(Error::DegenerateLeading));
    }

    #[test]
    fn harmonic_oscillator() {
        let (c, s) = local_series_solutions(&rf("1"), &rf("0"), &rf("1"), &q(0), 6).unwrap();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(c.coeffs(), &[r(1, 1), r(0, 1), r(-1, 2), r(0, 1), r(1, 24), r(0, 1)]);
        assert_eq!(s.coeffs(), &[r(0, 1), r(1, 1), r(0, 1), r(-1, 6), r(0, 1), r(1, 120)]);
        let (a, b) = local_series_solutions(&rf("1"), &rf("0"), &rf("0"), &q(0), 4).unwrap();
        assert_eq!(a.coeffs(), &[q(1), q(0), q(0), q(0)]);
        assert_eq!(b.coeffs(), &[q(0), q(1), q(0), q(0)]);
        assert!(matches!(
            local_series_solutions(&rf("t"), &rf("1"), &rf("1"), &q(0), 4),
            Err(Error::SingularPoint(_))
        ));
    }
}
