//! Fan documents and the `retoric` command line.
//!
//! A document is JSON with exact integers:
//!
//! ```json
//! {"rank": 2, "tau": [[0, 1], [1, 0]], "cones": [[[1, 0], [0, 1]]], "twist": [0, 0]}
//! ```
//!
//! Only maximal cones are stored; faces are recomputed on load.

use crate::classify::{self, circle_action_census, ClassifyError, EStarCoefficients, RealizeError};
use crate::fans::{validate_fan, Cone, FanError};
use crate::invariants::{self, InvariantError};
use crate::matrix::{Matrix, Vector};
use crate::poly::CountPolynomial;
use crate::variety::{RealToricVariety, VarietyError};
use crate::zlattice::{InvolutiveLattice, LatticeError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::io::{Read, Write};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub rank: usize,
    pub tau: Vec<Vector>,
    pub cones: Vec<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vector>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

pub const DEFAULT_MAX_RANK: usize = 8;

fn max_rank() -> usize {
    std::env::var("RETORIC_MAX_RANK").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_RANK)
}

impl FanDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    /// Shape checks: matrix size, generator and twist lengths, rank limit.
    fn check_shape(&self) -> Result<(), DocumentError> {
        let n = self.rank;
        let bad = |m: String| Err(DocumentError::Validation(m));
        if n > max_rank() {
            return bad(format!("rank {n} exceeds RETORIC_MAX_RANK = {}", max_rank()));
        }
        if self.tau.len() != n || self.tau.iter().any(|r| r.len() != n) {
            return bad(format!("tau must be a {n}x{n} matrix"));
        }
        for (i, c) in self.cones.iter().enumerate() {
            if let Some(g) = c.iter().find(|g| g.len() != n) {
                return bad(format!("cone {i}: generator {g:?} does not have length {n}"));
            }
        }
        if let Some(t) = &self.twist {
            if t.len() != n {
                return bad(format!("twist has length {}, expected {n}", t.len()));
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> Result<InvolutiveLattice, DocumentError> {
        self.check_shape()?;
        InvolutiveLattice::new(Matrix::from_rows_with_width(&self.tau, self.rank))
            .map_err(|e| DocumentError::Validation(format!("tau: {e}")))
    }

    pub fn to_variety(&self) -> Result<RealToricVariety, DocumentError> {
        let lattice = self.lattice()?;
        let fan = crate::fans::EquivariantFan::from_generators(lattice, self.cones.clone())
            .map_err(|e| DocumentError::Validation(e.to_string()))?;
        let twist = self.twist.clone().unwrap_or_else(|| vec![0; self.rank]);
        RealToricVariety::new(fan, &twist).map_err(|e| DocumentError::Validation(format!("twist: {e}")))
    }

    /// Canonical document: maximal cones in fan order, twist omitted when zero.
    pub fn from_variety(x: &RealToricVariety) -> Self {
        let twist = (!x.twist().is_zero()).then(|| x.twist().representative().to_vec());
        FanDocument {
            rank: x.dim(),
            tau: x.lattice().tau().to_rows(),
            cones: x.fan().maximal_cones().iter().map(|c| c.generators().to_vec()).collect(),
            twist,
        }
    }
}

pub fn parse(text: &str) -> Result<RealToricVariety, DocumentError> {
    FanDocument::from_json(text)?.to_variety()
}

pub fn emit(x: &RealToricVariety) -> String {
    FanDocument::from_variety(x).to_json()
}

#[derive(Parser, Debug)]
#[command(name = "retoric", version, about = "Invariants and topology of real toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fan axioms, τ and the twist.
    Validate { file: Option<String> },
    /// Type, counting polynomials and topological predicates.
    Invariants { file: Option<String> },
    /// Name the homeomorphism type of the real locus.
    Classify { file: Option<String> },
    /// Apply one transformation and print the resulting document.
    Transform(TransformArgs),
    /// Build a (2;1)_1 threefold with the given e*-polynomial.
    Realize { polynomial: String },
    /// Circle-action orbit census of a (2;1)_1 threefold.
    Census { file: Option<String> },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "operation")]
struct Operation {
    #[arg(long)]
    barycentric: bool,
    #[arg(long = "blowup-w")]
    blowup_w: bool,
    #[arg(long)]
    unwind: bool,
    /// Generators of an invariant cone, as JSON.
    #[arg(long, value_name = "CONE")]
    blowup: Option<String>,
    #[arg(long)]
    fibre: bool,
    #[arg(long)]
    core: bool,
    /// Rows of an equivariant lattice surjection, as JSON.
    #[arg(long, value_name = "MAP")]
    quotient: Option<String>,
}

#[derive(Args, Debug)]
struct TransformArgs {
    file: Option<String>,
    #[command(flatten)]
    operation: Operation,
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn validation(message: impl ToString) -> Self {
        Failure { code: EXIT_VALIDATION, message: message.to_string() }
    }

    fn precondition(message: impl ToString) -> Self {
        Failure { code: EXIT_PRECONDITION, message: message.to_string() }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::validation(e)
    }
}

impl From<VarietyError> for Failure {
    fn from(e: VarietyError) -> Self {
        match e {
            VarietyError::NotSmooth | VarietyError::NotAffine | VarietyError::Twisted => Failure::precondition(e),
            _ => Failure::validation(e),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        Failure::precondition(e)
    }
}

fn read_input(file: &Option<String>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match file.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Failure::validation(format!("reading stdin: {e}")))?;
            Ok(s)
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::validation(format!("{path}: {e}"))),
    }
}

#[derive(Serialize)]
struct ValidationReport {
    ok: bool,
    violations: Vec<String>,
}

/// A value or the reason it could not be computed.
fn field<T: ToString, E: std::fmt::Display>(r: Result<T, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("n/a ({e})"),
    }
}

#[derive(Serialize)]
struct InvariantsReport {
    signature: String,
    e: String,
    a: String,
    e_star: String,
    beta: String,
    orientable: String,
    h1_tor: String,
    compact_real_locus: bool,
    has_real_point: bool,
    smooth_topological_core: bool,
    properly_wound: bool,
    cellular_dimension: Option<usize>,
    dehn_sommerville: String,
}

fn invariants_report(x: &RealToricVariety) -> InvariantsReport {
    InvariantsReport {
        signature: x.signature().to_string(),
        e: invariants::e_polynomial(x).to_string(),
        a: field(invariants::a_polynomial(x)),
        e_star: invariants::e_star_polynomial(x).to_string(),
        beta: invariants::virtual_poincare(x).to_string(),
        orientable: field(invariants::orientable(x)),
        h1_tor: field(invariants::h1_tor_dimension(x).map(|t| format!("dim {} codim {}", t.dim, t.codim))),
        compact_real_locus: x.compact_real_locus(),
        has_real_point: x.has_real_point(),
        smooth_topological_core: x.smooth_topological_core(),
        properly_wound: x.properly_wound(),
        cellular_dimension: x.cellular_dimension(),
        dehn_sommerville: field(invariants::dehn_sommerville_check(x).map(|r| {
            let second = r.fixed_point_relation.map_or("n/a".to_string(), |(a, b)| format!("{a} = {b}"));
            format!("{} (e(-1;1) = {}, fixed points {})", if r.passed { "pass" } else { "fail" }, r.euler_value, second)
        })),
    }
}

fn print_fields(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    let serde_json::Value::Object(map) = serde_json::to_value(value).expect("reports serialize") else {
        unreachable!("reports are structs")
    };
    for (k, v) in map {
        match v {
            serde_json::Value::String(s) => writeln!(out, "{k}: {s}")?,
            other => writeln!(out, "{k}: {other}")?,
        }
    }
    Ok(())
}

fn execute(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let json = cli.format == Format::Json;
    let io = |e: std::io::Error| Failure::validation(format!("writing output: {e}"));
    match cli.command {
        Command::Validate { file } => {
            let doc = FanDocument::from_json(&read_input(&file, stdin)?)?;
            let lattice = doc.lattice()?;
            let mut violations: Vec<String> =
                validate_fan(&lattice, &doc.cones).violations.iter().map(|v| v.to_string()).collect();
            if let Some(t) = &doc.twist {
                if !lattice.is_anti_invariant(t) {
                    violations.push(format!("twist {t:?}: {}", LatticeError::NotAntiInvariant));
                }
            }
            let report = ValidationReport { ok: violations.is_empty(), violations };
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).expect("serialize")).map_err(io)?;
            } else if report.ok {
                writeln!(out, "OK").map_err(io)?;
            } else {
                for v in &report.violations {
                    writeln!(out, "violation: {v}").map_err(io)?;
                }
            }
            Ok(if report.ok { EXIT_OK } else { EXIT_VALIDATION })
        }
        Command::Invariants { file } => {
            let x = parse(&read_input(&file, stdin)?)?;
            let report = invariants_report(&x);
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).expect("serialize")).map_err(io)?;
            } else {
                print_fields(out, &report).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Classify { file } => {
            let x = parse(&read_input(&file, stdin)?)?;
            let t = classify::classify(&x)?;
            if json {
                #[derive(Serialize)]
                struct Report<'a> {
                    classification: &'a crate::classify::TopologicalType,
                    text: String,
                }
                let r = Report { classification: &t, text: t.canonical().to_string() };
                writeln!(out, "{}", serde_json::to_string(&r).expect("serialize")).map_err(io)?;
            } else {
                writeln!(out, "{}", t.canonical()).map_err(io)?;
            }
            Ok(if t.is_unsupported() { EXIT_UNSUPPORTED } else { EXIT_OK })
        }
        Command::Transform(args) => {
            let x = parse(&read_input(&args.file, stdin)?)?;
            let op = args.operation;
            let y = if op.barycentric {
                x.resolve_winding_barycentric()
            } else if op.blowup_w {
                x.resolve_winding_blowup()?
            } else if op.unwind {
                x.unwinding().0
            } else if let Some(c) = op.blowup {
                let gens: Vec<Vector> = serde_json::from_str(&c).map_err(|e| Failure::validation(format!("--blowup: {e}")))?;
                let cone = Cone::new(x.dim(), gens).map_err(|e| Failure::validation(format!("--blowup: {e}")))?;
                x.toric_blow_up(&cone)?
            } else if op.fibre {
                x.canonical_fibre()
            } else if op.core {
                x.topological_core()
            } else if let Some(m) = op.quotient {
                let rows: Vec<Vector> = serde_json::from_str(&m).map_err(|e| Failure::validation(format!("--quotient: {e}")))?;
                let width = rows.first().map_or(0, |r| r.len());
                if rows.iter().any(|r| r.len() != width) || width != x.dim() {
                    return Err(Failure::validation(FanError::Lattice(LatticeError::DimensionMismatch {
                        expected: x.dim(),
                        got: width,
                    })));
                }
                x.quotient_by_subgroup(&Matrix::from_rows_with_width(&rows, width))?
            } else {
                unreachable!("clap requires one operation")
            };
            writeln!(out, "{}", emit(&y)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Realize { polynomial } => {
            let p: CountPolynomial = polynomial.parse().map_err(Failure::validation)?;
            let coeffs = EStarCoefficients::from_polynomial(&p).map_err(Failure::validation)?;
            let x = classify::realize_e_star(&coeffs).map_err(|e: RealizeError| Failure::validation(e))?;
            writeln!(out, "{}", emit(&x)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Census { file } => {
            let x = parse(&read_input(&file, stdin)?)?;
            let c = circle_action_census(&x)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&c).expect("serialize")).map_err(io)?;
            } else {
                print_fields(out, &c).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli, stdin, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        Failure::precondition(e)
    }
}
