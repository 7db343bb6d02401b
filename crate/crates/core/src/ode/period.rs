//! The principal period of a pencil, expanded at `t = ∞`.
//!
//! Dividing `f` by `z_1 ⋯ z_q` gives `t + g(u)` on the torus, with
//! `g = Σ_x c_x u^x` over the nonzero dual lattice points. The torus cycle
//! integrates `1/(t + g)` to `Σ_m (-1)^m CT(g^m) t^{-m-1}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::series::LaurentSeries;
use crate::error::{Error, Result};
use crate::lattice::linalg::dot;
use crate::scalar::Scalar;
use crate::toric::{build_family, FamilySpec};

/// `CT(g^m)` for `m = 0..n`, where `g = Σ c_x u^x` and every exponent `x`
/// satisfies `<v, x> >= -1` for each `v` in `normals`.
///
/// A partial product is dropped once it cannot return to the origin in the
/// remaining steps.
pub fn constant_terms<C: Scalar>(g: &[(Vec<i64>, C)], normals: &[Vec<i64>], n: usize) -> Vec<C> {
    let Some(dim) = g.first().map(|(x, _)| x.len()) else {
        let mut out = vec![C::zero(); n];
        if n > 0 {
            out[0] = C::one();
        }
        return out;
    };
    let mut out = Vec::with_capacity(n);
    let mut cur: HashMap<Vec<i64>, C> = HashMap::from([(vec![0; dim], C::one())]);
    for m in 0..n {
        out.push(cur.get(&vec![0; dim]).cloned().unwrap_or_else(C::zero));
        if m + 1 == n {
            break;
        }
        let remaining = (n - 1 - (m + 1)) as i64;
        let mut next: HashMap<Vec<i64>, C> = HashMap::with_capacity(cur.len() * 2);
        for (y, a) in &cur {
            for (x, c) in g {
                let z: Vec<i64> = y.iter().zip(x).map(|(p, q)| p + q).collect();
                if normals.iter().any(|v| dot(v, &z) > remaining) {
                    continue;
                }
                let v = a.mul_ref(c);
                match next.get_mut(&z) {
                    Some(e) => *e = e.add_ref(&v),
                    None => {
                        next.insert(z, v);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        cur = next;
    }
    out
}

/// The torus Laurent polynomial `g` of a family, with its orbit coefficients.
/// Coefficients must be constants.
pub fn torus_polynomial(spec: &FamilySpec) -> Result<Vec<(Vec<i64>, BigRational)>> {
    let fam = build_family(spec)?;
    let coeffs = match &spec.coefficients {
        None => vec![BigRational::from_integer(1.into()); fam.dual_orbits.orbits.len()],
        Some(c) => c
            .iter()
            .map(|r| {
                r.as_constant().ok_or_else(|| {
                    Error::HypothesisViolated(format!("orbit coefficient {r} depends on t"))
                })
            })
            .collect::<Result<_>>()?,
    };
    Ok(fam
        .dual_orbits
        .points
        .iter()
        .zip(&fam.dual_orbits.orbit_index)
        .map(|(x, &o)| (x.clone(), coeffs[o].clone()))
        .collect())
}

/// `Σ_{m<n} (-1)^m CT(g^m) s^{m+1} + O(s^{n+1})` with `s = 1/t`.
pub fn principal_period_series(spec: &FamilySpec, n: usize) -> Result<LaurentSeries> {
    let g = torus_polynomial(spec)?;
    let normals = spec.polytope.vertices().to_vec();
    let integral = g.iter().all(|(_, c)| c.is_integer());
    let cts: Vec<BigRational> = if integral {
        let gi: Vec<(Vec<i64>, BigInt)> = g.iter().map(|(x, c)| (x.clone(), c.to_integer())).collect();
        constant_terms(&gi, &normals, n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect()
    } else {
        constant_terms(&g, &normals, n)
    };
    let coeffs = cts
        .into_iter()
        .enumerate()
        .map(|(m, c)| if m % 2 == 0 { c } else { -c })
        .collect();
    Ok(LaurentSeries::new(1, coeffs))
}
