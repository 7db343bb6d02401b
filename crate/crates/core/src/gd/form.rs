//! Rational forms `Σ_L N_L Ω / f^L` and their reduction to the complement.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::engine::{Cascade, Engine};
use crate::arith::RationalFunction;
use crate::error::{Error, Result};
use crate::toric::{CoxGrading, GradedPoly, GradedPolynomial};

/// Numerators by pole order `L >= 1`; `N_L` has degree `(L-1)β`. `Ω` is
/// implicit.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RationalForm {
    pub levels: BTreeMap<usize, GradedPolynomial>,
}

impl RationalForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `n Ω / f^pole`, checking the degree of `n`.
    pub fn add(&mut self, pole: usize, n: GradedPolynomial, grading: &CoxGrading) -> Result<()> {
        if pole == 0 {
            return Err(Error::NoSuchDegree("pole order must be positive".into()));
        }
        let d = grading.scale(&grading.anticanonical(), pole as i64 - 1);
        if n.degree() != &d || !n.is_homogeneous(grading) {
            return Err(Error::NoSuchDegree(format!(
                "numerator of Ω/f^{pole} must have degree {d:?}"
            )));
        }
        match self.levels.get_mut(&pole) {
            Some(p) => p.add_assign(&n),
            None => {
                self.levels.insert(pole, n);
            }
        }
        Ok(())
    }

    /// `d^j/dt^j (Ω/f) = (-1)^j j! (z_1⋯z_q)^j Ω / f^{j+1}`.
    pub fn period_derivative(j: usize, grading: &CoxGrading) -> Self {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let fact: i64 = (1..=j as i64).product();
        let p = GradedPoly::monomial(grading, vec![j as u32; grading.nvars()], RationalFunction::from(sign * fact));
        let mut form = Self::new();
        form.levels.insert(j + 1, p);
        form
    }

    pub fn is_zero(&self) -> bool {
        self.levels.values().all(|p| p.is_empty())
    }

    pub fn top(&self) -> Option<usize> {
        self.levels.iter().rev().find(|(_, p)| !p.is_empty()).map(|(&l, _)| l)
    }

    fn cascade(&self, engine: &mut Engine) -> Result<Cascade<RationalFunction>> {
        let mut c = Cascade::new();
        for (&l, p) in &self.levels {
            if !p.is_empty() {
                c.insert(l - 1, engine.coordinates(l - 1, p)?);
            }
        }
        Ok(c)
    }
}

fn in_complement(engine: &mut Engine, k: usize, coords: &[RationalFunction]) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    let sys = engine.level(k)?;
    let comp = &sys.skeleton.as_ref().unwrap().complement;
    Ok(coords.iter().enumerate().all(|(o, c)| c.is_zero() || comp.contains(&o)))
}

/// One reduction step at the highest pole order whose numerator is not in
/// the complement: `K = R + Σ A_i ∂f/∂z_i` is replaced by `R`, and the next
/// lower order gains `(1/k) Σ ∂A_i/∂z_i`. Forms already reduced are
/// returned unchanged.
pub fn reduce_pole_order(form: &RationalForm, engine: &mut Engine) -> Result<RationalForm> {
    let coords = form.cascade(engine)?;
    let mut target = None;
    for (&k, v) in coords.iter().rev() {
        if !in_complement(engine, k, v)? {
            target = Some(k);
            break;
        }
    }
    let Some(k) = target else {
        return Ok(form.clone());
    };
    let (residual, div) = engine.step_exact(k, &coords[&k])?;
    let mut out = form.clone();
    let top = engine.expand_residual(k, &residual)?;
    if top.is_empty() {
        out.levels.remove(&(k + 1));
    } else {
        out.levels.insert(k + 1, top);
    }
    let below = engine.expand(k - 1, &div)?;
    match out.levels.get_mut(&k) {
        Some(p) => p.add_assign(&below),
        None => {
            out.levels.insert(k, below);
        }
    }
    Ok(out)
}

/// Reduces every level top-down, so that each numerator lies in the
/// complement.
pub fn reduce_fully(form: &RationalForm, engine: &mut Engine) -> Result<RationalForm> {
    let coords = form.cascade(engine)?;
    let top = coords.keys().next_back().copied().unwrap_or(0);
    let mut r = engine.reduce_exact(vec![coords], false)?.remove(0);
    let mut out = RationalForm::new();
    for k in 0..=top {
        let v = r.residual.remove(&k).unwrap_or_default();
        let p = engine.expand_residual(k, &v)?;
        if !p.is_empty() {
            out.levels.insert(k + 1, p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixtures;
    use crate::toric::{build_family, FamilySpec};

    #[test]
    fn zero_form_is_fixed() {
        let fam = build_family(&FamilySpec::new(fixtures::square())).unwrap();
        let mut eng = Engine::new(&fam, true, false).unwrap();
        let z = RationalForm::new();
        let r = reduce_pole_order(&z, &mut eng).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn constructed_cofactor_moves_down() {
        // z_1 ∂f/∂z_1 Ω/f^2 becomes ∂(z_1)/∂z_1 Ω/f = Ω/f
        let fam = build_family(&FamilySpec::new(fixtures::edge_octahedron())).unwrap();
        let g = &fam.grading;
        let mut eng = Engine::new(&fam, false, false).unwrap();
        let mut e1 = vec![0; 18];
        e1[0] = 1;
        let k = fam.f.partial(0, g).mul_monomial(&e1, g);
        let mut form = RationalForm::new();
        form.add(2, k, g).unwrap();
        let r = reduce_pole_order(&form, &mut eng).unwrap();
        assert_eq!(r.top(), Some(1));
        assert!(!r.levels.contains_key(&2));
        let one = GradedPoly::monomial(g, vec![0; 18], RationalFunction::from(1));
        assert_eq!(r.levels[&1], one);
        // already reduced
        assert_eq!(reduce_pole_order(&r, &mut eng).unwrap(), r);
    }

    #[test]
    fn wrong_degree_rejected() {
        let fam = build_family(&FamilySpec::new(fixtures::square())).unwrap();
        let g = &fam.grading;
        let mut form = RationalForm::new();
        let p = GradedPoly::monomial(g, vec![1, 0, 0, 0], RationalFunction::from(1));
        assert!(matches!(form.add(1, p, g), Err(Error::NoSuchDegree(_))));
    }

    #[test]
    fn full_reduction_of_the_second_derivative() {
        let fam = build_family(&FamilySpec::new(fixtures::square())).unwrap();
        let g = fam.grading.clone();
        let mut eng = Engine::new(&fam, true, false).unwrap();
        let w2 = RationalForm::period_derivative(2, &g);
        let r = reduce_fully(&w2, &mut eng).unwrap();
        for (&l, p) in &r.levels {
            assert!(p.is_homogeneous(&g));
            assert_eq!(p.degree(), &g.scale(&g.anticanonical(), l as i64 - 1));
        }
        let again = reduce_fully(&r, &mut eng).unwrap();
        assert_eq!(again, r);
    }
}
