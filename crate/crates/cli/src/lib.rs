//! The `comonoid` command line: load objects from JSON documents, run the
//! checkers and procedures, and report.
//!
//! Exit codes: 0 when everything checked holds, 1 when a check fails or a
//! lift does not exist, 2 when the input cannot be read.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use comonoid::coalg::{
    check_comonoid, check_comonoid_map, extend_lift_over_subcoalgebras, unit_coalgebra,
    ChainLevelOracle, ComonLiftingProblem, ExtensionOutcome,
};
use comonoid::comod::{
    check_comodule, check_comodule_map, cofree_comodule, factorize_comodule_map, linear_lift,
    ComodSquare, ComoduleMap,
};
use comonoid::exactla::homology::{homology, is_quasi_iso};
use comonoid::exactla::system::chain_lift;
use comonoid::format::{self, Object, SquareMaps};
use comonoid::homotopy::{verify, Axiom, RunConfig};
use comonoid::report::{chain_witness, Witness};
use comonoid::{ChainComplex, ChainMap, Error, Field, Report};

#[derive(Parser, Debug)]
#[command(
    name = "comonoid",
    version,
    about = "Exact checks for dg coalgebras and comodules"
)]
pub struct Cli {
    /// Coefficient field for generated instances: q or fp:<p>
    #[arg(long, global = true, default_value = "q")]
    pub field: Field,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: u64,
    /// Also write the report as JSON to this path
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Generate non-negatively graded instances
    #[arg(long, global = true)]
    pub non_negative: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the laws of a complex, coalgebra, comodule, map or square
    Check {
        path: PathBuf,
        /// Expected kind; taken from the document when omitted
        #[arg(long, value_enum)]
        kind: Option<CheckKind>,
    },
    /// Homology dimensions of a complex or of the carrier of an object
    Homology { path: PathBuf },
    /// Factor a comodule map as a monomorphism followed by a trivial fibration
    Factorize {
        path: PathBuf,
        /// Directory for middle.json, j.json and p1.json
        #[arg(long, default_value = "factorization")]
        out: PathBuf,
    },
    /// Find a diagonal for a commutative square
    Lift {
        path: PathBuf,
        /// Write the diagonal here when one exists
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a randomized axiom check, or `all` of them
    Verify { axiom: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Complex,
    Coalgebra,
    Comodule,
    Map,
    Square,
}

/// What a command found: its verdict, text for the terminal and the JSON
/// report.
#[derive(Debug)]
pub struct Outcome {
    pub passed: bool,
    pub text: String,
    pub json: Value,
    /// Wall-clock time per verified axiom, kept out of the reports.
    pub timings: Vec<(String, Duration)>,
}

impl Outcome {
    fn report(r: &Report) -> Outcome {
        Outcome {
            passed: r.passed(),
            text: r.to_string(),
            json: json!({ "subject": r.subject, "passed": r.passed(), "clauses": r.clauses }),
            timings: Vec::new(),
        }
    }
}

/// Exit code for an error: 1 for a violated law, 2 for unusable input.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_invariant_violation() => 1,
        _ => 2,
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Check { path, kind } => cmd_check(path, *kind),
        Command::Homology { path } => cmd_homology(path),
        Command::Factorize { path, out } => cmd_factorize(path, out),
        Command::Lift { path, out } => cmd_lift(path, out.as_deref()),
        Command::Verify { axiom } => cmd_verify(cli, axiom),
    }
}

fn load(path: &Path) -> anyhow::Result<Object> {
    format::read(path).with_context(|| format!("reading {}", path.display()))
}

fn complex_report(x: &ChainComplex) -> Report {
    let mut r = Report::new("complex");
    let witness = x.square_failure().map(|n| {
        let dd = x.differential(n - 1).mul(&x.differential(n));
        let index = dd.triplets().map(|(_, c, _)| c).min().unwrap_or(0);
        Witness { degree: n, index }
    });
    r.clause("d ∘ d = 0", witness);
    r
}

fn kind_of(obj: &Object) -> CheckKind {
    match obj {
        Object::Complex(_) => CheckKind::Complex,
        Object::Coalgebra(_) => CheckKind::Coalgebra,
        Object::Comodule(_) => CheckKind::Comodule,
        Object::ChainMap(_) | Object::CoalgebraMap(_) | Object::ComoduleMap(_) => CheckKind::Map,
        _ => CheckKind::Square,
    }
}

fn check_object(obj: &Object) -> Report {
    let title = serde_json::to_value(obj.kind())
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default();
    let mut r = Report::new(title);
    match obj {
        Object::Complex(x) => r.merge("", complex_report(x)),
        Object::Coalgebra(c) => {
            r.merge("carrier: ", complex_report(c.carrier()));
            r.merge("", check_comonoid(c));
        }
        Object::Comodule(m) => {
            r.merge("carrier: ", complex_report(m.carrier()));
            r.merge("coalgebra: ", check_comonoid(m.coalgebra()));
            r.merge("", check_comodule(m));
        }
        Object::ChainMap(f) => {
            r.merge("source: ", complex_report(f.source()));
            r.merge("target: ", complex_report(f.target()));
            r.clause("chain map", chain_witness(f));
        }
        Object::CoalgebraMap(f) => {
            r.merge("source: ", check_comonoid(f.source()));
            r.merge("target: ", check_comonoid(f.target()));
            r.merge("", check_comonoid_map(f));
        }
        Object::ComoduleMap(f) => {
            r.merge("source: ", check_comodule(f.source()));
            r.merge("target: ", check_comodule(f.target()));
            r.merge("", check_comodule_map(f));
        }
        Object::ChainSquare(sq) => square_report(
            &mut r,
            sq,
            |m| check_object(&Object::ChainMap(m.clone())),
            |a, b| a.compose(b).ok(),
        ),
        Object::CoalgebraSquare(sq) => square_report(
            &mut r,
            sq,
            |m| check_object(&Object::CoalgebraMap(m.clone())),
            |a, b| a.underlying().compose(b.underlying()).ok(),
        ),
        Object::ComoduleSquare(sq) => square_report(
            &mut r,
            sq,
            |m| check_object(&Object::ComoduleMap(m.clone())),
            |a, b| a.underlying().compose(b.underlying()).ok(),
        ),
    }
    r
}

fn square_report<M>(
    r: &mut Report,
    sq: &SquareMaps<M>,
    check: impl Fn(&M) -> Report,
    compose: impl Fn(&M, &M) -> Option<ChainMap>,
) {
    for (name, m) in [
        ("left", &sq.left),
        ("right", &sq.right),
        ("top", &sq.top),
        ("bottom", &sq.bottom),
    ] {
        r.merge(&format!("{name}: "), check(m));
    }
    let commutes = match (compose(&sq.right, &sq.top), compose(&sq.bottom, &sq.left)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    };
    r.flag("right ∘ top = bottom ∘ left", commutes);
}

fn cmd_check(path: &Path, kind: Option<CheckKind>) -> anyhow::Result<Outcome> {
    let obj = load(path)?;
    if let Some(k) = kind {
        if k != kind_of(&obj) {
            bail!("{} holds a {:?}, not a {k:?}", path.display(), obj.kind());
        }
    }
    Ok(Outcome::report(&check_object(&obj)))
}

fn cmd_homology(path: &Path) -> anyhow::Result<Outcome> {
    let obj = load(path)?;
    let describe = |x: &ChainComplex| -> anyhow::Result<Value> {
        if let Some(n) = x.square_failure() {
            return Err(Error::NotAComplex(n).into());
        }
        Ok(json!(homology(x)))
    };
    let (json, text) = match &obj {
        Object::Complex(x) => homology_only(describe(x)?),
        Object::Coalgebra(c) => homology_only(describe(c.carrier())?),
        Object::Comodule(m) => homology_only(describe(m.carrier())?),
        Object::ChainMap(f) => map_homology(f, describe)?,
        Object::CoalgebraMap(f) => map_homology(f.underlying(), describe)?,
        Object::ComoduleMap(f) => map_homology(f.underlying(), describe)?,
        _ => bail!("homology needs a complex, an object with a carrier, or a map"),
    };
    Ok(Outcome {
        passed: true,
        text,
        json,
        timings: Vec::new(),
    })
}

fn homology_only(h: Value) -> (Value, String) {
    let text = format!("{h}\n");
    (json!({ "homology": h }), text)
}

fn map_homology(
    f: &ChainMap,
    describe: impl Fn(&ChainComplex) -> anyhow::Result<Value>,
) -> anyhow::Result<(Value, String)> {
    if let Some(n) = f.commutation_failure() {
        return Err(Error::NotAChainMap(n).into());
    }
    let (s, t, qi) = (
        describe(f.source())?,
        describe(f.target())?,
        is_quasi_iso(f),
    );
    let text = format!("source {s}\ntarget {t}\nquasi-isomorphism: {qi}\n");
    Ok((
        json!({ "source": s, "target": t, "quasi_isomorphism": qi }),
        text,
    ))
}

/// A chain map as a map of cofree comodules over the unit coalgebra.
fn over_unit(f: &ChainMap) -> anyhow::Result<ComoduleMap> {
    let unit = unit_coalgebra(f.field());
    let s = cofree_comodule(f.source(), &unit)?;
    let t = cofree_comodule(f.target(), &unit)?;
    let u = f.retarget(s.carrier(), t.carrier())?;
    Ok(ComoduleMap::new(s, t, u)?)
}

fn cmd_factorize(path: &Path, out: &Path) -> anyhow::Result<Outcome> {
    let f = match load(path)? {
        Object::ComoduleMap(f) => {
            let r = check_comodule_map(&f);
            if !r.passed() {
                return Ok(Outcome::report(&r));
            }
            f
        }
        Object::ChainMap(f) => {
            if let Some(n) = f.commutation_failure() {
                return Err(Error::NotAChainMap(n).into());
            }
            over_unit(&f)?
        }
        other => bail!(
            "factorize needs a comodule map or a chain map, found {:?}",
            other.kind()
        ),
    };
    let fact = factorize_comodule_map(&f)?;
    let files = [
        ("middle.json", Object::Comodule(fact.middle().clone())),
        ("j.json", Object::ComoduleMap(fact.j.clone())),
        ("p1.json", Object::ComoduleMap(fact.p1.clone())),
    ];
    for (name, obj) in &files {
        format::write(&out.join(name), obj)
            .with_context(|| format!("writing {}", out.join(name).display()))?;
    }
    let r = fact.check();
    let mut outcome = Outcome::report(&r);
    outcome.text.push_str(&format!(
        "wrote middle.json, j.json and p1.json to {}\n",
        out.display()
    ));
    Ok(outcome)
}

fn write_lift(out: Option<&Path>, obj: &Object) -> anyhow::Result<()> {
    if let Some(p) = out {
        format::write(p, obj).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn no_lift(reason: &str, detail: Value) -> Outcome {
    Outcome {
        passed: false,
        text: format!("no lift: {reason}\n"),
        json: json!({ "lift": false, "reason": reason, "detail": detail }),
        timings: Vec::new(),
    }
}

fn lifted(obj: &Object) -> Outcome {
    Outcome {
        passed: true,
        text: "lift found\n".into(),
        json: json!({ "lift": true, "diagonal": format::to_document(obj) }),
        timings: Vec::new(),
    }
}

fn cmd_lift(path: &Path, out: Option<&Path>) -> anyhow::Result<Outcome> {
    match load(path)? {
        Object::ChainSquare(sq) => {
            for m in [&sq.left, &sq.right, &sq.top, &sq.bottom] {
                if let Some(n) = m.commutation_failure() {
                    return Err(Error::NotAChainMap(n).into());
                }
            }
            if sq.right.compose(&sq.top)? != sq.bottom.compose(&sq.left)? {
                return Err(Error::SquareDoesNotCommute.into());
            }
            match chain_lift(&sq.left, &sq.right, &sq.top, &sq.bottom) {
                Some(l) => {
                    let obj = Object::ChainMap(l);
                    write_lift(out, &obj)?;
                    Ok(lifted(&obj))
                }
                None => Ok(no_lift(
                    "the linear system for a diagonal is inconsistent",
                    Value::Null,
                )),
            }
        }
        Object::ComoduleSquare(sq) => {
            let sq = ComodSquare::new(sq.left, sq.right, sq.top, sq.bottom)?;
            match linear_lift(&sq)? {
                Some(l) => {
                    let obj = Object::ComoduleMap(l);
                    write_lift(out, &obj)?;
                    Ok(lifted(&obj))
                }
                None => Ok(no_lift(
                    "the linear system for a diagonal is inconsistent",
                    Value::Null,
                )),
            }
        }
        Object::CoalgebraSquare(sq) => {
            let pr = ComonLiftingProblem::new(sq.left, sq.right, sq.top, sq.bottom)?;
            match extend_lift_over_subcoalgebras(&pr, &ChainLevelOracle::default())? {
                ExtensionOutcome::Lifted { lift, .. } => {
                    let obj = Object::CoalgebraMap(lift);
                    write_lift(out, &obj)?;
                    Ok(lifted(&obj))
                }
                ExtensionOutcome::Stuck(s) => {
                    Ok(no_lift(&s.reason.clone(), serde_json::to_value(&s)?))
                }
            }
        }
        other => bail!("lift needs a square, found {:?}", other.kind()),
    }
}

fn cmd_verify(cli: &Cli, axiom: &str) -> anyhow::Result<Outcome> {
    let axioms: Vec<Axiom> = if axiom == "all" {
        Axiom::ALL.to_vec()
    } else {
        vec![axiom.parse()?]
    };
    let run = RunConfig {
        non_negative: cli.non_negative,
        ..RunConfig::new(cli.field, cli.seed, cli.trials)
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut timings = Vec::new();
    for a in axioms {
        let start = Instant::now();
        let r = verify(a, &run)?;
        timings.push((a.to_string(), start.elapsed()));
        text.push_str(&r.to_string());
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    let json = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        serde_json::to_value(&reports)?
    };
    Ok(Outcome {
        passed,
        text,
        json,
        timings,
    })
}

/// Writes `v` as pretty JSON with a trailing newline.
pub fn write_json(path: &Path, v: &Value) -> anyhow::Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}
