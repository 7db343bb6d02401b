//! Reading the JSON inputs. Unreadable files and malformed JSON are usage
//! errors; well-formed input with bad content is a domain error.

use std::path::Path;

use k3pf::lattice::LatticePolytope;
use k3pf::ode::DifferentialOperator;
use k3pf::toric::FamilySpec;
use k3pf::{Error, RationalFunction};
use serde_json::Value;

use crate::Failure;

pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{} is not JSON: {e}", path.display())))
}

fn schema(what: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Domain(Error::Parse(format!("{what}: {e}")))
}

pub fn polytope_from(v: &Value) -> Result<LatticePolytope, Failure> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema("polytope", "missing integer \"dim\""))?;
    let vertices: Vec<Vec<i64>> = serde_json::from_value(v.get("vertices").cloned().unwrap_or(Value::Null))
        .map_err(|e| schema("polytope vertices", e))?;
    Ok(LatticePolytope::new(dim as usize, vertices)?)
}

pub fn polytope(path: &Path) -> Result<LatticePolytope, Failure> {
    polytope_from(&read_json(path)?)
}

pub fn family(path: &Path) -> Result<FamilySpec, Failure> {
    let v = read_json(path)?;
    let p = polytope_from(v.get("polytope").ok_or_else(|| schema("family", "missing \"polytope\""))?)?;
    let mut spec = FamilySpec::new(p);
    if let Some(g) = v.get("group") {
        spec.group = serde_json::from_value(g.clone()).map_err(|e| schema("group", e))?;
    }
    if let Some(x) = v.get("parameter") {
        spec.parameter = serde_json::from_value(x.clone()).map_err(|e| schema("parameter", e))?;
    }
    if let Some(c) = v.get("coefficients") {
        let strs: Vec<String> = serde_json::from_value(c.clone()).map_err(|e| schema("coefficients", e))?;
        spec.coefficients = Some(strs.iter().map(|s| s.parse()).collect::<k3pf::Result<_>>()?);
    }
    Ok(spec)
}

/// `{"coeffs": [...]}`, or the output of `pf compute`.
pub fn operator(path: &Path) -> Result<DifferentialOperator, Failure> {
    let v = read_json(path)?;
    let list = v
        .get("coeffs")
        .or_else(|| v.get("coefficients"))
        .ok_or_else(|| schema("operator", "missing \"coeffs\""))?;
    let strs: Vec<String> = serde_json::from_value(list.clone()).map_err(|e| schema("operator coeffs", e))?;
    let coeffs: Vec<RationalFunction> = strs.iter().map(|s| s.parse()).collect::<k3pf::Result<_>>()?;
    Ok(DifferentialOperator::new(coeffs)?)
}

pub fn ratfunc(s: &str) -> Result<RationalFunction, Failure> {
    Ok(s.parse()?)
}
