//! Assembly of the Picard-Fuchs operator from reduced period derivatives.

use num_traits::Zero;

use super::engine::{Cascade, Engine};
use super::form::RationalForm;
use super::witness::MembershipWitness;
use crate::arith::{rank_profile, rf_nullspace, Matrix, RFMatrix, RationalFunction};
use crate::error::{Error, Result};
use crate::ode::{annihilates, principal_period_series, AnnihilationReport, DifferentialOperator};
use crate::toric::{build_family, Exponent, Family, FamilySpec};
use crate::Fp;

#[derive(Clone, Debug)]
pub struct PicardFuchsOptions {
    pub max_order: usize,
    pub use_symmetry: bool,
    pub use_j1: bool,
    /// Keep a membership witness for every reduction step.
    pub trace: bool,
    /// Terms of the period series used to accept the result; 0 skips it.
    pub oracle_terms: usize,
}

impl Default for PicardFuchsOptions {
    fn default() -> Self {
        PicardFuchsOptions {
            max_order: 4,
            use_symmetry: true,
            use_j1: false,
            trace: false,
            oracle_terms: 20,
        }
    }
}

/// A reduction step of `ω^{(derivative)}` at pole order `pole_order`.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub derivative: usize,
    pub pole_order: usize,
    pub witness: MembershipWitness,
}

#[derive(Clone, Debug)]
pub struct PicardFuchsResult {
    /// Monic in `∂`.
    pub operator: DifferentialOperator,
    pub order: usize,
    /// Pole order and complement representative of each coordinate in the
    /// dependence test.
    pub basis: Vec<(usize, Exponent)>,
    pub trace: Vec<TraceStep>,
    pub oracle: Option<AnnihilationReport>,
    /// Whether the linear algebra ran on group invariants.
    pub symmetric: bool,
}

fn derivative_cascade(engine: &mut Engine, j: usize) -> Result<Cascade<RationalFunction>> {
    let form = RationalForm::period_derivative(j, engine.grading());
    let p = &form.levels[&(j + 1)];
    let mut c = Cascade::new();
    c.insert(j, engine.coordinates(j, p)?);
    Ok(c)
}

fn flatten<C: Clone + Zero>(levels: &std::collections::BTreeMap<usize, Vec<C>>, len: usize) -> Vec<C> {
    let mut v: Vec<C> = levels.values().flatten().cloned().collect();
    v.resize(len, C::zero());
    v
}

/// Rank of the first `n` vectors at the engine's point.
fn modular_rank(vectors: &[Vec<Fp>]) -> Result<usize> {
    let len = vectors.iter().map(Vec::len).max().unwrap_or(0);
    let rows: Vec<Vec<Fp>> = vectors
        .iter()
        .map(|v| {
            let mut v = v.clone();
            v.resize(len, Fp::zero());
            v
        })
        .collect();
    Ok(rank_profile(&Matrix::with_cols(rows, len)?).rank())
}

/// Smallest `r` with `ω, …, ω^{(r)}` dependent after specializing `t`.
fn modular_order(engine: &mut Engine, max_order: usize) -> Result<usize> {
    let t0 = engine.t0();
    let mut vectors = Vec::new();
    for j in 0..=max_order {
        let exact = derivative_cascade(engine, j)?;
        let lifted: Cascade<Fp> = exact
            .into_iter()
            .map(|(k, v)| {
                let w = v
                    .iter()
                    .map(|x| x.eval_mod(t0))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::ReductionStuck("evaluation point is a pole".into()))?;
                Ok((k, w))
            })
            .collect::<Result<_>>()?;
        let r = engine.reduce_modular(vec![lifted])?.remove(0);
        vectors.push(r.residual.values().flatten().copied().collect());
        if modular_rank(&vectors)? <= j {
            return Ok(j);
        }
    }
    Err(Error::OrderExceeded(max_order))
}

/// The minimal operator annihilating the period of the family's pencil.
pub fn picard_fuchs(spec: &FamilySpec, opts: &PicardFuchsOptions) -> Result<PicardFuchsResult> {
    let family = build_family(spec)?;
    picard_fuchs_for(&family, opts)
}

pub fn picard_fuchs_for(family: &Family, opts: &PicardFuchsOptions) -> Result<PicardFuchsResult> {
    if opts.max_order == 0 {
        return Err(Error::OrderExceeded(0));
    }
    let mut engine = Engine::new(family, opts.use_symmetry, opts.use_j1)?;
    let mut r = modular_order(&mut engine, opts.max_order)?;
    loop {
        let items = (0..=r).map(|j| derivative_cascade(&mut engine, j)).collect::<Result<Vec<_>>>()?;
        let reduced = engine.reduce_exact(items, opts.trace)?;
        let len = reduced.iter().map(|x| x.residual.values().map(Vec::len).sum::<usize>()).max().unwrap_or(0);
        let cols: Vec<Vec<RationalFunction>> = reduced.iter().map(|x| flatten(&x.residual, len)).collect();
        let rows: Vec<Vec<RationalFunction>> = (0..len).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let kernel = rf_nullspace(&RFMatrix::with_cols(rows, r + 1)?);
        let Some(c) = kernel.into_iter().find(|c| !c[r].is_zero()) else {
            // the specialization saw a spurious drop in rank
            r += 1;
            if r > opts.max_order {
                return Err(Error::OrderExceeded(opts.max_order));
            }
            continue;
        };
        let operator = DifferentialOperator::new(c)?.monic();

        let mut basis = Vec::new();
        for k in 0..=r {
            for e in engine.complement_basis(k)? {
                basis.push((k + 1, e));
            }
        }
        basis.truncate(len);

        let mut trace = Vec::new();
        if opts.trace {
            for (j, red) in reduced.iter().enumerate() {
                for (&k, (target, dec)) in red.steps.iter().rev() {
                    trace.push(TraceStep {
                        derivative: j,
                        pole_order: k + 1,
                        witness: engine.witness(k, target, dec)?,
                    });
                }
            }
        }

        let oracle = if opts.oracle_terms > 0 {
            let y = principal_period_series(&family.spec, opts.oracle_terms)?;
            let rep = annihilates(&operator, &y)?;
            if !rep.annihilates {
                let (e, v) = rep.first_nonzero.clone().unwrap_or_default();
                return Err(Error::OracleRejected(format!(
                    "order {r} operator leaves coefficient {v} at s^{e}"
                )));
            }
            Some(rep)
        } else {
            None
        };

        return Ok(PicardFuchsResult {
            operator,
            order: r,
            basis,
            trace,
            oracle,
            symmetric: engine.symmetric,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rf;
    use crate::lattice::fixtures;

    #[test]
    fn square_gives_second_order() {
        let r = picard_fuchs(&FamilySpec::new(fixtures::square()), &PicardFuchsOptions::default()).unwrap();
        assert_eq!(r.order, 2);
        let expect = DifferentialOperator::new(vec![rf("t"), rf("3*t^2-16"), rf("t^3-16*t")]).unwrap();
        assert!(r.operator.same_class(&expect));
        assert!(r.oracle.unwrap().annihilates);
    }

    #[test]
    fn order_bound_enforced() {
        let opts = PicardFuchsOptions {
            max_order: 1,
            ..Default::default()
        };
        let r = picard_fuchs(&FamilySpec::new(fixtures::square()), &opts);
        assert_eq!(r.unwrap_err(), Error::OrderExceeded(1));
    }

    #[test]
    fn trace_steps_verify() {
        let opts = PicardFuchsOptions {
            trace: true,
            ..Default::default()
        };
        let fam = build_family(&FamilySpec::new(fixtures::square())).unwrap();
        let r = picard_fuchs_for(&fam, &opts).unwrap();
        assert!(!r.trace.is_empty());
        for s in &r.trace {
            assert!(s.pole_order >= 2 && s.pole_order <= s.derivative + 1);
            assert!(s.witness.verify(&fam.f, &fam.grading));
        }
    }
}
