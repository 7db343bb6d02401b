//! Sparse polynomials in Cox coordinates, homogeneous of a fixed class.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};

use super::grading::{CoxGrading, Degree, Exponent};
use crate::arith::RationalFunction;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A homogeneous polynomial `Σ c_a z^a`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPoly<C> {
    nvars: usize,
    degree: Degree,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Scalar> GradedPoly<C> {
    pub fn zero(nvars: usize, degree: Degree) -> Self {
        GradedPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from terms, checking every exponent against `degree`.
    pub fn from_terms(
        grading: &CoxGrading,
        degree: Degree,
        terms: impl IntoIterator<Item = (Exponent, C)>,
    ) -> Result<Self> {
        let mut p = Self::zero(grading.nvars(), degree);
        for (e, c) in terms {
            if e.len() != p.nvars {
                return Err(Error::Shape(format!("exponent {e:?} has the wrong length")));
            }
            let d = grading.degree(&e);
            if d != p.degree {
                return Err(Error::NoSuchDegree(format!(
                    "monomial {e:?} has class {d:?}, expected {:?}",
                    p.degree
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// `c z^e` with its class.
    pub fn monomial(grading: &CoxGrading, e: Exponent, c: C) -> Self {
        let mut p = Self::zero(grading.nvars(), grading.degree(&e));
        p.add_term(e, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c z^e` without a degree check; callers keep homogeneity.
    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.degree, other.degree);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&C::from_int(-1)))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(self.nvars, self.degree.clone());
        if !c.is_zero() {
            for (e, v) in &self.terms {
                p.terms.insert(e.clone(), v.mul_ref(c));
            }
        }
        p
    }

    pub fn mul(&self, other: &Self, grading: &CoxGrading) -> Self {
        let mut p = Self::zero(self.nvars, grading.add(&self.degree, &other.degree));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                p.add_term(e, ca.mul_ref(cb));
            }
        }
        p
    }

    pub fn mul_monomial(&self, m: &[u32], grading: &CoxGrading) -> Self {
        let mut p = Self::zero(self.nvars, grading.add(&self.degree, &grading.degree(m)));
        for (e, c) in &self.terms {
            let e = e.iter().zip(m).map(|(x, y)| x + y).collect();
            p.terms.insert(e, c.clone());
        }
        p
    }

    /// `∂/∂z_i`, of class `deg - deg(z_i)`.
    pub fn partial(&self, i: usize, grading: &CoxGrading) -> Self {
        let mut p = Self::zero(self.nvars, grading.sub(&self.degree, &grading.ray_degree(i)));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                p.terms.insert(d, c.mul_ref(&C::from_int(i64::from(e[i]))));
            }
        }
        p
    }

    /// Relabels variables: `z_i -> z_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut p = Self::zero(self.nvars, self.degree.clone());
        for (e, c) in &self.terms {
            let mut f = vec![0u32; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                f[perm[i]] = x;
            }
            p.terms.insert(f, c.clone());
        }
        p
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> GradedPoly<D> {
        let mut p = GradedPoly::zero(self.nvars, self.degree.clone());
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    /// Checks that every term has the declared class.
    pub fn is_homogeneous(&self, grading: &CoxGrading) -> bool {
        self.terms.keys().all(|e| grading.degree(e) == self.degree)
    }
}

/// Cox-ring polynomials with coefficients in `Q(t)`.
pub type GradedPolynomial = GradedPoly<RationalFunction>;

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exponents: Exponent,
    coeff: RationalFunction,
}

impl Serialize for GradedPoly<RationalFunction> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&TermRecord {
                exponents: e.clone(),
                coeff: c.clone(),
            })?;
        }
        seq.end()
    }
}

/// Parses the term-list JSON format and checks homogeneity.
pub fn graded_from_json(grading: &CoxGrading, value: &serde_json::Value) -> Result<GradedPolynomial> {
    let records: Vec<TermRecord> =
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let Some(first) = records.first() else {
        return Err(Error::Parse("empty polynomial has no class".into()));
    };
    let degree = grading.degree(&first.exponents);
    GradedPoly::from_terms(grading, degree, records.into_iter().map(|r| (r.exponents, r.coeff)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rf;
    use crate::lattice::fixtures;

    #[test]
    fn toy_partials() {
        let g = CoxGrading::from_polytope(&fixtures::square()).unwrap();
        let q = g.nvars();
        let f = GradedPoly::monomial(&g, vec![1; q], rf("t"));
        let d0 = f.partial(0, &g);
        let mut e = vec![1; q];
        e[0] = 0;
        assert_eq!(d0.coeff(&e), rf("t"));
        assert!(d0.is_homogeneous(&g));
        let c = GradedPoly::monomial(&g, vec![0; q], rf("5"));
        assert!(c.partial(3, &g).is_empty());
    }

    #[test]
    fn degree_checked() {
        let g = CoxGrading::from_polytope(&fixtures::octahedron()).unwrap();
        let beta = g.anticanonical();
        let bad = GradedPoly::from_terms(&g, beta, [(vec![1, 0, 0, 0, 0, 0], rf("1"))]);
        assert!(matches!(bad, Err(Error::NoSuchDegree(_))));
    }

    #[test]
    fn cancellation_removes_terms() {
        let g = CoxGrading::from_polytope(&fixtures::octahedron()).unwrap();
        let a = GradedPoly::monomial(&g, vec![1; 6], rf("t"));
        assert!(a.sub(&a).is_empty());
        assert_eq!(a.mul(&a, &g).degree(), &g.scale(&g.anticanonical(), 2));
    }

    #[test]
    fn json_round_trip() {
        let g = CoxGrading::from_polytope(&fixtures::square()).unwrap();
        let a = GradedPoly::monomial(&g, vec![1; g.nvars()], rf("t/2"));
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v[0]["coeff"], "t/2");
        assert_eq!(graded_from_json(&g, &v).unwrap(), a);
    }
}
