//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a mathematical precondition fails, 2 on
//! malformed input.

mod document;

pub use document::{parse_all, split_list, Coefficient, PresentationDocument};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::PrimeField;
use crate::calculus::{d_dpi, delta_p};
use crate::criterion::{
    cross_validate, is_regular_at, kunz_pdegree, omega_free_rank_check, singular_locus_at_p,
    LocusReport, RingPresentation,
};
use crate::groebner::IdealHandle;
use crate::oracle::scan_rational_points;
use crate::poly::{MonomialOrder, PolyRing, Polynomial};
use crate::ring::Ring;

/// Total degree above which a warning is printed.
pub const DEGREE_WARNING: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "singloc",
    version,
    about = "Singular loci of arithmetic rings over ramified DVRs"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the declared height.
    #[arg(long, global = true)]
    height: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singular locus along V(p).
    Locus { file: PathBuf },
    /// Regularity at a prime of the special fiber.
    RegularAt {
        file: PathBuf,
        /// Comma-separated generators over F_p; defaults to the document's `prime_ideal`.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Brute-force verdicts at every F_p-rational point.
    OracleScan { file: PathBuf },
    /// Compare with the delta_p criterion on the lifted presentation.
    CrossValidate { file: PathBuf },
    /// Apply d/dpi, delta_p, or a partial derivative to an expression.
    Derive {
        file: PathBuf,
        expression: String,
        /// `pi`, `delta_p`, or a variable name.
        #[arg(long)]
        by: String,
    },
    /// Reduced Groebner basis, of the special fiber ideal or of inline generators.
    Groebner {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
        #[arg(long)]
        p: Option<u64>,
        /// Comma-separated variable names.
        #[arg(long)]
        vars: Option<String>,
        /// Comma-separated generators.
        #[arg(long)]
        gens: Option<String>,
    },
    /// Freeness and rank of the reduced differential module at a prime.
    OmegaCheck {
        file: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Kunz p-degree of a prime of F_p[x].
    Pdegree {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        vars: String,
        #[arg(long, default_value = "")]
        ideal: String,
    },
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one invocation, writing to `out` and `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(report) => {
            let _ = writeln!(out, "{report}");
            0
        }
        Err(e) => {
            let kind = match e {
                CliError::Math(_) => "precondition failed",
                CliError::Input(_) => "input error",
            };
            let _ = writeln!(err, "error: {kind}: {e}");
            e.exit_code()
        }
    }
}

fn math<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Math(e.to_string())
}

fn warn_degrees<R: Ring>(gens: &[Polynomial<R>], err: &mut dyn Write) {
    for (i, g) in gens.iter().enumerate() {
        if let Some(d) = g.total_degree().filter(|&d| d > DEGREE_WARNING) {
            let _ = writeln!(
                err,
                "warning: generator {} has total degree {d}; computation may be slow",
                i + 1
            );
        }
    }
}

fn load(
    file: &std::path::Path,
    height: Option<usize>,
    err: &mut dyn Write,
) -> Result<(PresentationDocument, RingPresentation), CliError> {
    let doc = PresentationDocument::load(file)?;
    let pres = doc.presentation(height)?;
    warn_degrees(pres.generators(), err);
    Ok((doc, pres))
}

fn strings<R: Ring>(gens: &[Polynomial<R>]) -> Vec<String> {
    gens.iter().map(ToString::to_string).collect()
}

fn ideal_text(gens: &[String]) -> String {
    if gens.is_empty() {
        "(0)".into()
    } else {
        format!("({})", gens.join(", "))
    }
}

fn render(json: bool, value: Value, text: String) -> String {
    if json {
        serde_json::to_string_pretty(&value).expect("serializable")
    } else {
        text
    }
}

fn locus_value(l: &LocusReport) -> Value {
    json!({
        "locus": strings(&l.basis().generators()),
        "used_height": l.used_height,
        "is_empty": l.is_empty,
        "height_source": l.height_source.as_str(),
    })
}

fn locus_text(label: &str, l: &LocusReport) -> String {
    format!(
        "height: {} ({})\n{label}: {}; empty: {}",
        l.used_height,
        l.height_source.as_str(),
        ideal_text(&strings(&l.basis().generators())),
        l.is_empty
    )
}

fn prime_ideal(
    doc: &PresentationDocument,
    pres: &RingPresentation,
    ideal: &Option<String>,
) -> Result<Vec<Polynomial<PrimeField>>, CliError> {
    let exprs = match (ideal, &doc.prime_ideal) {
        (Some(s), _) => split_list(s),
        (None, Some(v)) => v.clone(),
        (None, None) => {
            return Err(CliError::Input(
                "no prime ideal given; pass --ideal or set `prime_ideal`".into(),
            ))
        }
    };
    parse_all(&pres.fiber_ring(), &exprs, "ideal generator")
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<String, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Locus { file } => {
            let (_, pres) = load(file, cli.height, err)?;
            let l = singular_locus_at_p(&pres).map_err(math)?;
            Ok(render(json, locus_value(&l), locus_text("locus", &l)))
        }
        Command::RegularAt { file, ideal } => {
            let (doc, pres) = load(file, cli.height, err)?;
            let q = prime_ideal(&doc, &pres, ideal)?;
            let regular = is_regular_at(&pres, &q).map_err(math)?;
            Ok(render(
                json,
                json!({ "regular": regular, "ideal": strings(&q) }),
                format!("regular: {regular}"),
            ))
        }
        Command::OracleScan { file } => {
            let (_, pres) = load(file, cli.height, err)?;
            let scan = scan_rational_points(&pres).map_err(math)?;
            let rows: Vec<Value> = scan
                .iter()
                .map(|e| {
                    let point: Vec<u64> = e.point.coords().iter().map(|c| c.residue()).collect();
                    json!({ "point": point, "on_fiber": e.on_fiber, "regular": e.regular })
                })
                .collect();
            let mut text = Vec::new();
            for e in &scan {
                let verdict = match e.regular {
                    Some(true) => "regular",
                    Some(false) => "singular",
                    None => "off-fiber",
                };
                text.push(format!("{}: {verdict}", e.point));
            }
            let on = scan.iter().filter(|e| e.on_fiber).count();
            let singular = scan.iter().filter(|e| e.regular == Some(false)).count();
            text.push(format!("on-fiber: {on}; singular: {singular}"));
            Ok(render(json, Value::Array(rows), text.join("\n")))
        }
        Command::CrossValidate { file } => {
            let (_, pres) = load(file, cli.height, err)?;
            let cv = cross_validate(&pres).map_err(math)?;
            let value = json!({
                "agree": cv.agree,
                "pi_locus": locus_value(&cv.pi_locus),
                "hj_locus": locus_value(&cv.hj_locus),
            });
            let text = format!(
                "pi-locus: {}\nhj-locus: {}\nagree: {}",
                ideal_text(&strings(&cv.pi_locus.basis().generators())),
                ideal_text(&strings(&cv.hj_locus.basis().generators())),
                cv.agree
            );
            Ok(render(json, value, text))
        }
        Command::Derive {
            file,
            expression,
            by,
        } => {
            let doc = PresentationDocument::load(file)?;
            let result = derive(&doc, expression, by)?;
            Ok(render(json, json!({ "result": result }), result))
        }
        Command::Groebner {
            file,
            order,
            p,
            vars,
            gens,
        } => {
            let (ring, generators) = match (file, p, vars) {
                (Some(file), None, None) => {
                    let (_, pres) = load(file, None, err)?;
                    (pres.fiber_ring(), pres.fiber_generators())
                }
                (None, Some(p), Some(vars)) => {
                    let ring = fp_ring(*p, vars)?;
                    let exprs = split_list(gens.as_deref().unwrap_or(""));
                    let g = parse_all(&ring, &exprs, "generator")?;
                    warn_degrees(&g, err);
                    (ring, g)
                }
                _ => {
                    return Err(CliError::Input(
                        "give either a presentation file or --p and --vars".into(),
                    ))
                }
            };
            let n = ring.nvars();
            let order = match order {
                OrderArg::Lex => MonomialOrder::lex(n),
                OrderArg::Grevlex => MonomialOrder::grevlex(n),
            };
            let ideal = IdealHandle::with_order(&ring, generators, order).map_err(math)?;
            let basis = ideal.groebner().formatted();
            Ok(render(
                json,
                json!({ "basis": basis }),
                format!("basis: {}", ideal_text(&basis)),
            ))
        }
        Command::OmegaCheck { file, ideal } => {
            let (doc, pres) = load(file, cli.height, err)?;
            let q = prime_ideal(&doc, &pres, ideal)?;
            let o = omega_free_rank_check(&pres, &q).map_err(math)?;
            Ok(render(
                json,
                json!({ "free": o.free, "rank": o.rank, "dim_R": o.dim_r, "b": o.b }),
                format!(
                    "free: {}\nrank: {}\ndim_R: {}\nb: {}",
                    o.free, o.rank, o.dim_r, o.b
                ),
            ))
        }
        Command::Pdegree { p, vars, ideal } => {
            let ring = fp_ring(*p, vars)?;
            let gens = parse_all(&ring, &split_list(ideal), "ideal generator")?;
            let q = IdealHandle::new(&ring, gens).map_err(math)?;
            let d = kunz_pdegree(&q).map_err(math)?;
            Ok(render(json, json!({ "pdegree": d }), d.to_string()))
        }
    }
}

fn fp_ring(p: u64, vars: &str) -> Result<PolyRing<PrimeField>, CliError> {
    let k = PrimeField::new(p).map_err(math)?;
    PolyRing::new(k, split_list(vars)).map_err(|e| CliError::Input(format!("variables: {e}")))
}

fn derive(doc: &PresentationDocument, expression: &str, by: &str) -> Result<String, CliError> {
    let parse_err = |e: crate::poly::ParseError| CliError::Input(format!("expression: {e}"));
    match by {
        "pi" => {
            let ring = doc.ring()?;
            Ok(d_dpi(&ring.parse(expression).map_err(parse_err)?).to_string())
        }
        "delta_p" => {
            let ring = doc.local_ring()?;
            Ok(delta_p(&ring.parse(expression).map_err(parse_err)?).to_string())
        }
        var => {
            let ring = doc.ring()?;
            let i = ring
                .var_index(var)
                .ok_or_else(|| CliError::Input(format!("--by: unknown variable `{var}`")))?;
            let f = ring.parse(expression).map_err(parse_err)?;
            Ok(f.partial_derivative(i)
                .expect("index from ring")
                .to_string())
        }
    }
}
