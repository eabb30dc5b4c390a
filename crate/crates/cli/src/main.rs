//! `twistalg`: JSON front end to the twistalg library.
//!
//! Exit codes: 0 on success, 1 on a domain error (or a failed `verify`
//! suite), 2 on a usage error. Errors are printed as `{"error", "detail"}`.

mod input;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use twistalg::catalog::{standard_algebra, table2_groups, AlgebraType, TypeTag};
use twistalg::classify::{classify, restricts_to_e};
use twistalg::curve::HesseCurve;
use twistalg::json::{
    error_to_json, group_to_json, matrix_to_json, pair_to_json, point_to_json, relations_from_json,
    relations_to_json, report_to_json,
};
use twistalg::quadalg::{geometric_twist_check, RelationSpace};
use twistalg::{Error, FieldTower, Result};

const SCHEMA_PREFIX: &str = "twistalg";

#[derive(Parser)]
#[command(name = "twistalg", version, about = "Geometric quadratic algebras, their twists and twisting groups")]
struct Cli {
    /// JSON tower declaring the generators usable in field elements.
    #[arg(long, global = true, value_name = "FILE")]
    tower: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogAction {
    List,
    Show,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveAction {
    Add,
    Neg,
    Mul,
    Torsion,
    J,
}

#[derive(Subcommand)]
enum Command {
    /// The standard algebras with their relations, pairs and automorphism groups.
    Catalog {
        action: CatalogAction,
        #[arg(long = "type")]
        ty: Option<String>,
        /// Comma-separated parameters: alpha, or lambda,a,b,c for EC.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Pencil determinant of a relation space, and sigma at given points.
    Pointvariety {
        #[arg(long, value_name = "FILE")]
        relations: PathBuf,
        /// Point `a,b,c` at which to evaluate sigma; may be repeated.
        #[arg(long = "at", allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Relations of (E, tau sigma) with tau the dual of phi, obtained by twisting.
    Twist {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<String>,
        /// `diag(a,b,c)`, `r0;r1;r2` with comma-separated rows, or JSON rows.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long)]
        check_geometric: bool,
    },
    /// Z, M and N of a standard algebra and the resulting twist family.
    Classify {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long)]
        certificates: bool,
    },
    /// Group law on the Hesse curve x^3+y^3+z^3 = 3*lambda*xyz.
    Curve {
        action: CurveAction,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// Run a fixed verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
    },
}

fn schema(name: &str) -> String {
    format!("{SCHEMA_PREFIX}.{name}/1")
}

fn algebra(tower: &FieldTower, ty: &str, params: &[String]) -> Result<AlgebraType> {
    let tag = TypeTag::parse(ty)?;
    AlgebraType::from_params(tag, tower, &input::elements(tower, params)?)
}

fn usage_for(tag: TypeTag) -> &'static [&'static str] {
    match tag {
        TypeTag::S | TypeTag::SPrime | TypeTag::NC => &["alpha"],
        TypeTag::EC => &["lambda", "a", "b", "c"],
        _ => &[],
    }
}

fn catalog(tower: &FieldTower, action: CatalogAction, ty: Option<&str>, params: &[String]) -> Result<Value> {
    match action {
        CatalogAction::List => Ok(json!({
            "schema": schema("catalog"),
            "types": TypeTag::ALL.iter().map(|t| json!({"type": t.name(), "params": usage_for(*t)})).collect::<Vec<_>>(),
        })),
        CatalogAction::Show => {
            let ty = ty.ok_or_else(|| Error::Parse("catalog show needs --type".into()))?;
            let a = algebra(tower, ty, params)?;
            let (r, pair) = standard_algebra(&a)?;
            let (ze, ge) = table2_groups(&a)?;
            let t = a.tower();
            Ok(json!({
                "schema": schema("catalog"),
                "type": a.tag().name(),
                "params": params_json(&a),
                "relations": relations_to_json(&r),
                "pair": pair_to_json(&pair),
                "pencil_determinant": r.pencil_determinant().to_string(),
                "z_e": group_to_json(&ze, t),
                "g_e": group_to_json(&ge, t),
            }))
        }
    }
}

fn params_json(a: &AlgebraType) -> Value {
    Value::Object(a.params().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn pointvariety(relations: &std::path::Path, at: &[String]) -> Result<Value> {
    let r = relations_from_json(&input::read_json(relations)?)?;
    let det = r.pencil_determinant();
    let mut sigma = Vec::new();
    for s in at {
        let p = input::point(r.tower(), s)?;
        sigma.push(match r.sigma_from_pencil(&p) {
            Ok(q) => json!({"point": point_to_json(&p), "sigma": point_to_json(&q), "text": q.to_string()}),
            Err(e) => json!({"point": point_to_json(&p), "error": e.tag(), "detail": e.to_string()}),
        });
    }
    Ok(json!({
        "schema": schema("pointvariety"),
        "pencil_determinant": det.to_string(),
        "is_plane": det.is_zero(),
        "sigma": sigma,
    }))
}

fn twist(tower: &FieldTower, ty: &str, params: &[String], phi: &str, check: bool) -> Result<Value> {
    let a = algebra(tower, ty, params)?;
    let phi = input::matrix(a.tower(), phi)?;
    let (r, pair) = standard_algebra(&a)?;
    let tau = RelationSpace::dual_map(&phi)?;
    if restricts_to_e(&tau, &pair).is_none() {
        return Err(Error::Constraint(format!("{tau} does not preserve the point variety of {a}")));
    }
    let twisted = r.twist(&phi)?;
    let mut out = json!({
        "schema": schema("twist"),
        "type": a.tag().name(),
        "params": params_json(&a),
        "phi": matrix_to_json(&phi),
        "relations": relations_to_json(&twisted),
        "graded_automorphism": r.preserved_by(&phi),
    });
    if check {
        out["geometric_check"] = json!(geometric_twist_check(&r, &phi, &pair)?);
    }
    Ok(out)
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Parse(format!("missing --{flag}")))
}

fn curve(tower: &FieldTower, action: CurveAction, lambda: &str, p: &Option<String>, q: &Option<String>, n: Option<i64>) -> Result<Value> {
    let curve = HesseCurve::new(twistalg::FieldElement::parse(tower, lambda)?)?;
    let pt = |s: &Option<String>, flag: &str| -> Result<_> { curve.point(input::point(tower, need(s, flag)?)?) };
    let point_out = |r: twistalg::curve::CurvePoint| {
        json!({"schema": schema("curve"), "point": point_to_json(r.point()), "text": r.point().to_string()})
    };
    Ok(match action {
        CurveAction::J => json!({"schema": schema("curve"), "j": curve.j_invariant()?.to_string()}),
        CurveAction::Add => point_out(pt(p, "p")?.add(&pt(q, "q")?)?),
        CurveAction::Neg => point_out(pt(p, "p")?.neg()),
        CurveAction::Mul => {
            let n = n.ok_or_else(|| Error::Parse("missing --n".into()))?;
            point_out(pt(p, "p")?.mul(n))
        }
        CurveAction::Torsion => {
            let n = n.ok_or_else(|| Error::Parse("missing --n".into()))?;
            let n = u32::try_from(n).map_err(|_| Error::Parse("--n must be positive".into()))?;
            let set = curve.torsion_points(n)?;
            json!({
                "schema": schema("curve"),
                "n": n,
                "count": set.points.len(),
                "points": set.points.iter().map(|p| point_to_json(p.point())).collect::<Vec<_>>(),
                "text": set.points.iter().map(|p| p.point().to_string()).collect::<Vec<_>>(),
            })
        }
    })
}

fn verify(suite: &str) -> Result<(Value, bool)> {
    let checks = suites::run(suite)?;
    let passed = checks.iter().all(|c| c.ok);
    Ok((
        json!({
            "schema": schema("verify"),
            "suite": suite,
            "passed": passed,
            "checks": checks.iter().map(suites::Check::to_json).collect::<Vec<_>>(),
        }),
        passed,
    ))
}

fn run(cli: &Cli) -> Result<(Value, bool)> {
    let tower = input::load_tower(cli.tower.as_deref())?;
    let done = |v: Value| Ok((v, true));
    match &cli.command {
        Command::Catalog { action, ty, params } => done(catalog(&tower, *action, ty.as_deref(), params)?),
        Command::Pointvariety { relations, at } => done(pointvariety(relations, at)?),
        Command::Twist {
            ty,
            params,
            phi,
            check_geometric,
        } => done(twist(&tower, ty, params, phi, *check_geometric)?),
        Command::Classify { ty, params, certificates } => {
            let report = classify(&algebra(&tower, ty, params)?)?;
            done(report_to_json(&report, *certificates))
        }
        Command::Curve { action, lambda, p, q, n } => done(curve(&tower, *action, lambda, p, q, *n)?),
        Command::Verify { suite } => verify(suite),
    }
}

/// Writes a line to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, ok)) => {
            emit(&serde_json::to_string_pretty(&v).expect("serializable"));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            emit(&error_to_json(&e).to_string());
            ExitCode::from(if matches!(e, Error::Parse(_)) { 2 } else { 1 })
        }
    }
}
