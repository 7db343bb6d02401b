use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use k3pf::gd::{picard_fuchs, PicardFuchsOptions};
use k3pf::lattice::{automorphism_group, dual_group, orbits, reflexive_slices, LatticePolytope};
use k3pf::ode::{
    annihilates, principal_period_series, projective_normal_form, symmetric_square, symmetric_square_root,
    AnnihilationReport, DifferentialOperator,
};
use k3pf::toric::{build_family, check_invariance, rank_bound, CoxGrading};
use k3pf::{Error, RationalFunction};
use serde_json::{json, Value};

use crate::{input, Failure};

#[derive(Parser)]
#[command(name = "k3pf", version, about = "Picard-Fuchs equations of symmetric toric K3 pencils")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Lattice polytope queries.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// The symmetric pencil of a family file.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Compute or check a Picard-Fuchs operator.
    #[command(subcommand)]
    Pf(PfCmd),
    /// Second- and third-order operator algebra.
    #[command(subcommand)]
    Ode(OdeCmd),
    /// Period expansions.
    #[command(subcommand)]
    Period(PeriodCmd),
}

#[derive(Subcommand)]
pub enum PolytopeCmd {
    Info { file: PathBuf },
    Dual { file: PathBuf },
    Autos {
        file: PathBuf,
        /// Include orientation-reversing automorphisms.
        #[arg(long)]
        all: bool,
    },
    Orbits {
        file: PathBuf,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "lattice")]
        points: PointSet,
    },
    Slices {
        file: PathBuf,
        /// Search normals with entries in [-bound, bound].
        #[arg(long, default_value_t = 1)]
        bound: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PointSet {
    Lattice,
    Vertices,
    /// Lattice points of the polar dual, under the dual action.
    Dual,
}

#[derive(Subcommand)]
pub enum FamilyCmd {
    Build { file: PathBuf },
}

#[derive(Args)]
pub struct FamilyArg {
    #[arg(long)]
    family: PathBuf,
}

#[derive(Subcommand)]
pub enum PfCmd {
    Compute {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        /// Work on invariants of the family's group.
        #[arg(long)]
        use_symmetry: bool,
        /// Reduce modulo the shifted ideal generated by z_i ∂f/∂z_i.
        #[arg(long = "use-j1")]
        use_j1: bool,
        /// Include the membership witness of every reduction step.
        #[arg(long)]
        trace: bool,
        /// Period-series terms checked before accepting; 0 skips the check.
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    Verify {
        #[arg(long)]
        operator: PathBuf,
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
}

#[derive(Args)]
pub struct SecondOrder {
    #[arg(long)]
    a2: String,
    #[arg(long)]
    a1: String,
    #[arg(long)]
    a0: String,
}

impl SecondOrder {
    fn parse(&self) -> Result<(RationalFunction, RationalFunction, RationalFunction), Failure> {
        Ok((input::ratfunc(&self.a2)?, input::ratfunc(&self.a1)?, input::ratfunc(&self.a0)?))
    }
}

#[derive(Subcommand)]
pub enum OdeCmd {
    /// Symmetric square of a2 y'' + a1 y' + a0 y.
    Symsquare(SecondOrder),
    /// Second-order operator whose symmetric square is the given one.
    Symroot {
        #[arg(long)]
        operator: PathBuf,
    },
    /// Q with y'' = Q y after removing the first-derivative term.
    Normalform(SecondOrder),
}

#[derive(Subcommand)]
pub enum PeriodCmd {
    Series {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
}

pub fn run(cmd: Command) -> Result<Value, Failure> {
    match cmd {
        Command::Polytope(c) => polytope(c),
        Command::Family(FamilyCmd::Build { file }) => family_build(file),
        Command::Pf(c) => pf(c),
        Command::Ode(c) => ode(c),
        Command::Period(PeriodCmd::Series { family, n }) => {
            let spec = input::family(&family.family)?;
            let s = principal_period_series(&spec, n)?;
            let constant_terms: Vec<String> = s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(m, c)| if m % 2 == 0 { c.to_string() } else { (-c).to_string() })
                .collect();
            Ok(json!({
                "variable": "s = 1/t",
                "valuation": s.val(),
                "precision": s.prec(),
                "coeffs": s.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "constant_terms": constant_terms,
            }))
        }
    }
}

fn polytope_json(p: &LatticePolytope) -> Value {
    json!({"dim": p.dim(), "vertices": p.vertices()})
}

fn polytope(c: PolytopeCmd) -> Result<Value, Failure> {
    match c {
        PolytopeCmd::Info { file } => {
            let p = input::polytope(&file)?;
            Ok(json!({
                "dim": p.dim(),
                "vertices": p.vertices(),
                "facets": p.facets().len(),
                "lattice_points": p.lattice_points().len(),
                "interior_points": p.interior_lattice_points().len(),
                "reflexive": p.is_reflexive(),
            }))
        }
        PolytopeCmd::Dual { file } => Ok(polytope_json(&input::polytope(&file)?.polar_dual()?)),
        PolytopeCmd::Autos { file, all } => {
            let p = input::polytope(&file)?;
            let g = automorphism_group(&p, !all);
            Ok(json!({
                "order": g.len(),
                "elements": g.iter().map(|h| json!({"matrix": h.matrix(), "det": h.det()})).collect::<Vec<_>>(),
            }))
        }
        PolytopeCmd::Orbits { file, all, points } => {
            let p = input::polytope(&file)?;
            let g = automorphism_group(&p, !all);
            let part = match points {
                PointSet::Lattice => orbits(&g, &p.lattice_points())?,
                PointSet::Vertices => orbits(&g, p.vertices())?,
                PointSet::Dual => orbits(&dual_group(&g), &p.polar_dual()?.lattice_points())?,
            };
            let mut v = serde_json::to_value(&part).expect("orbit partitions serialize");
            v["sizes"] = json!(part.sizes());
            Ok(v)
        }
        PolytopeCmd::Slices { file, bound } => {
            if bound < 1 {
                return Err(Failure::Usage("--bound must be at least 1".into()));
            }
            let p = input::polytope(&file)?;
            let s = reflexive_slices(&p, bound)?;
            Ok(serde_json::to_value(&s).expect("slices serialize"))
        }
    }
}

fn family_build(file: PathBuf) -> Result<Value, Failure> {
    let spec = input::family(&file)?;
    let fam = build_family(&spec)?;
    let inv = check_invariance(&fam.f, &fam.group, &fam.grading)?;
    let bound = match rank_bound(&spec.polytope, &fam.group) {
        Ok(n) => json!(n),
        Err(Error::HypothesisViolated(why)) => json!({"unavailable": why}),
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "grading": grading_json(&fam.grading),
        "group_order": fam.group.len(),
        "dual_orbit_sizes": fam.dual_orbits.sizes(),
        "f": fam.f,
        "invariance": inv,
        "rank_bound": bound,
    }))
}

fn grading_json(g: &CoxGrading) -> Value {
    serde_json::to_value(g.summary()).expect("grading summary serializes")
}

fn strings(v: &[RationalFunction]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn operator_json(l: &DifferentialOperator) -> Value {
    json!({
        "coeffs": strings(l.coeffs()),
        "cleared": l.canonical().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "text": l.render(),
    })
}

fn report_json(r: &AnnihilationReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn pf(c: PfCmd) -> Result<Value, Failure> {
    match c {
        PfCmd::Compute {
            family,
            max_order,
            use_symmetry,
            use_j1,
            trace,
            n,
        } => {
            if max_order == 0 {
                return Err(Failure::Usage("--max-order must be at least 1".into()));
            }
            let spec = input::family(&family.family)?;
            let opts = PicardFuchsOptions {
                max_order,
                use_symmetry,
                use_j1,
                trace,
                oracle_terms: n,
            };
            let r = picard_fuchs(&spec, &opts)?;
            let mut out = json!({
                "order": r.order,
                "coefficients": strings(r.operator.coeffs()),
                "cleared": r.operator.canonical().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "text": r.operator.render(),
                "symmetric": r.symmetric,
                "basis": r.basis.iter().map(|(l, e)| json!({"pole_order": l, "exponents": e})).collect::<Vec<_>>(),
                "oracle": r.oracle.as_ref().map(report_json),
            });
            if trace {
                out["witnesses"] = r
                    .trace
                    .iter()
                    .map(|s| {
                        json!({
                            "derivative": s.derivative,
                            "pole_order": s.pole_order,
                            "witness": s.witness,
                        })
                    })
                    .collect();
            }
            Ok(out)
        }
        PfCmd::Verify { operator, family, n } => {
            let l = input::operator(&operator)?;
            let spec = input::family(&family.family)?;
            let s = principal_period_series(&spec, n)?;
            let rep = annihilates(&l, &s)?;
            if !rep.annihilates {
                let (e, v) = rep.first_nonzero.clone().unwrap_or_default();
                return Err(Error::OracleRejected(format!("coefficient {v} at s^{e}")).into());
            }
            Ok(report_json(&rep))
        }
    }
}

fn ode(c: OdeCmd) -> Result<Value, Failure> {
    match c {
        OdeCmd::Symsquare(a) => {
            let (a2, a1, a0) = a.parse()?;
            Ok(operator_json(&symmetric_square(&a2, &a1, &a0)?))
        }
        OdeCmd::Symroot { operator } => {
            let l = input::operator(&operator)?;
            let (a2, a1, a0) = symmetric_square_root(&l)?;
            Ok(json!({"a2": a2.to_string(), "a1": a1.to_string(), "a0": a0.to_string()}))
        }
        OdeCmd::Normalform(a) => {
            let (a2, a1, a0) = a.parse()?;
            Ok(json!({"q": projective_normal_form(&a2, &a1, &a0)?.to_string()}))
        }
    }
}
