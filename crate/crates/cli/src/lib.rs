//! Command-line front end for the `cmtorsion` library.
//!
//! Every subcommand calls one library operation and wraps its result in a [`CommandResult`].
//! Exit code 0 means success, 1 a domain or computation error (the JSON record carries the
//! message), 2 a usage error (usage text on standard error, nothing on standard output).

use clap::{Args, Parser, Subcommand, ValueEnum};
use cmtorsion::atlas::{
    degree_sequence, hilbert_class_poly, sg_scan_with, verify_table1, SgScanOptions,
};
use cmtorsion::classify::{classify_degree, prime_degree_table, DegreeMode};
use cmtorsion::ellcurve::{curves_isomorphic, kubert_curve, quadratic_twist, torsion_subgroup, Curve};
use cmtorsion::numfield::{NfElement, NumberField};
use cmtorsion::quadorder::{
    cartan_unit_order, class_number, class_number_cache_snapshot, decompose, ray_class_degree,
    real_primitive_ideals, seed_class_number_cache, two_torsion_class_count, Over,
};
use cmtorsion::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::sync::Arc;
use std::time::Instant;

/// Environment variable naming an optional class-number cache file.
pub const CACHE_ENV: &str = "CM_TORSION_CACHE";

/// Success or failure of a command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The operation succeeded.
    Ok,
    /// The operation failed.
    Error {
        /// Error text.
        message: String,
    },
}

/// The JSON record written for every parsed command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    /// Subcommand name.
    pub command: String,
    /// Echo of the parsed arguments.
    pub inputs: Value,
    /// Operation-specific payload (`null` on error).
    pub result: Value,
    /// Wall time of the library call in milliseconds.
    pub timing_ms: u64,
    /// Outcome.
    pub status: Status,
}

/// Output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    /// One JSON `CommandResult` object.
    Json,
    /// Comma-separated rows, for tabular results.
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "cmtorsion",
    version,
    about = "Torsion of CM elliptic curves over number fields",
    after_help = "Negative discriminants may be written directly (classnum -23) or after a `--` guard (classnum -- -23).\n\
                  Polynomials and field elements are comma-separated ascending coefficients, for example 1,-3,0,1.\n\
                  Curves are a1;a2;a3;a4;a6 with each coefficient a power-basis vector."
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Disc {
    /// An imaginary quadratic discriminant, e.g. -23.
    #[arg(allow_negative_numbers = true)]
    delta: i64,
}

#[derive(Args, Debug, Serialize)]
struct DiscModulus {
    /// An imaginary quadratic discriminant.
    #[arg(allow_negative_numbers = true)]
    delta: i64,
    /// A positive modulus N.
    n: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum OverArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "K")]
    K,
}

#[derive(Args, Debug, Serialize)]
struct RayArgs {
    /// A fundamental imaginary quadratic discriminant.
    #[arg(allow_negative_numbers = true)]
    delta: i64,
    /// The conductor N.
    n: u64,
    /// Base of the degree.
    #[arg(long, value_enum, default_value = "Q")]
    over: OverArg,
}

#[derive(Args, Debug, Serialize)]
struct CurveArgs {
    /// Defining polynomial of the base field, ascending coefficients.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    field: String,
    /// Weierstrass coefficients a1;a2;a3;a4;a6.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "kubert", required_unless_present = "kubert")]
    curve: Option<String>,
    /// Kubert parameters b;c.
    #[arg(long, allow_hyphen_values = true)]
    kubert: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct TwistArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// The twisting element as a power-basis vector.
    #[arg(long, allow_hyphen_values = true)]
    by: String,
}

#[derive(Args, Debug, Serialize)]
struct IsoArgs {
    /// Defining polynomial of the common base field.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    field: String,
    /// First curve a1;a2;a3;a4;a6.
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
    /// Second curve a1;a2;a3;a4;a6.
    #[arg(long, allow_hyphen_values = true)]
    other: String,
}

#[derive(Args, Debug, Serialize)]
struct DegSeqArgs {
    /// A class-number-one discriminant.
    #[arg(allow_negative_numbers = true)]
    delta: i64,
    /// The invariant m.
    m: u64,
    /// The invariant n, a multiple of m.
    n: u64,
}

#[derive(Args, Debug, Serialize)]
#[command(group = clap::ArgGroup::new("mode").args(["odd", "prime", "prime_squared"]))]
struct ClassifyArgs {
    /// The degree d.
    #[arg(long)]
    degree: u64,
    /// Classify in odd degree (the default).
    #[arg(long)]
    odd: bool,
    /// Classify in prime degree.
    #[arg(long)]
    prime: bool,
    /// Classify in prime-squared degree.
    #[arg(long)]
    prime_squared: bool,
}

#[derive(Args, Debug, Serialize)]
struct PrimeArg {
    /// A prime p.
    p: u64,
}

#[derive(Args, Debug, Serialize)]
struct Table1Args {
    /// Comma-separated row numbers (default: all seventeen).
    #[arg(long, value_delimiter = ',')]
    rows: Option<Vec<usize>>,
}

#[derive(Args, Debug, Serialize)]
struct ScanArgs {
    /// The bound X.
    x: u64,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class number h(D).
    Classnum(Disc),
    /// Genus invariant nu(D) and the 2-torsion class count.
    Nu(Disc),
    /// Primitive proper real ideals of O(D).
    RealIdeals(Disc),
    /// Degree of the ray class field of conductor N.
    Raydeg(RayArgs),
    /// Order of (O(D)/N O(D))^x.
    Cartan(DiscModulus),
    /// Hilbert class polynomial H_D(t).
    Hcp(Disc),
    /// Degree sequence of Y(m, n) over j(O(D)).
    Degseq(DegSeqArgs),
    /// Torsion subgroup of a curve over a number field.
    Torsion(CurveArgs),
    /// Quadratic twist of a curve.
    Twist(TwistArgs),
    /// Whether two curves are isomorphic over their field.
    Iso(IsoArgs),
    /// Torsion groups of CM curves in a given degree.
    Classify(ClassifyArgs),
    /// Non-Olson CM torsion in prime degree p.
    PrimeTable(PrimeArg),
    /// Verify the table of seventeen prime-degree curves.
    VerifyTable1(Table1Args),
    /// Sophie Germain class number scan up to X.
    SgScan(ScanArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classnum(_) => "classnum",
            Command::Nu(_) => "nu",
            Command::RealIdeals(_) => "real-ideals",
            Command::Raydeg(_) => "raydeg",
            Command::Cartan(_) => "cartan",
            Command::Hcp(_) => "hcp",
            Command::Degseq(_) => "degseq",
            Command::Torsion(_) => "torsion",
            Command::Twist(_) => "twist",
            Command::Iso(_) => "iso",
            Command::Classify(_) => "classify",
            Command::PrimeTable(_) => "prime-table",
            Command::VerifyTable1(_) => "verify-table1",
            Command::SgScan(_) => "sg-scan",
        }
    }

    fn inputs(&self) -> Value {
        let v = match self {
            Command::Classnum(a) | Command::Nu(a) | Command::RealIdeals(a) | Command::Hcp(a) => serde_json::to_value(a),
            Command::Raydeg(a) => serde_json::to_value(a),
            Command::Cartan(a) => serde_json::to_value(a),
            Command::Degseq(a) => serde_json::to_value(a),
            Command::Torsion(a) => serde_json::to_value(a),
            Command::Twist(a) => serde_json::to_value(a),
            Command::Iso(a) => serde_json::to_value(a),
            Command::Classify(a) => serde_json::to_value(a),
            Command::PrimeTable(a) => serde_json::to_value(a),
            Command::VerifyTable1(a) => serde_json::to_value(a),
            Command::SgScan(a) => serde_json::to_value(a),
        };
        v.unwrap_or(Value::Null)
    }

    fn tabular(&self) -> bool {
        matches!(
            self,
            Command::Degseq(_) | Command::SgScan(_) | Command::VerifyTable1(_) | Command::PrimeTable(_) | Command::RealIdeals(_)
        )
    }
}

/// Captured process outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Exit code.
    pub code: i32,
    /// Text for standard output.
    pub stdout: String,
    /// Text for standard error.
    pub stderr: String,
}

fn to_json<T: Serialize>(v: &T) -> cmtorsion::Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(format!("serialization: {e}")))
}

fn parse_curve(field: &Arc<NumberField>, args: &CurveArgs) -> cmtorsion::Result<Curve> {
    match (&args.curve, &args.kubert) {
        (Some(c), _) => Curve::parse(field, c),
        (None, Some(k)) => {
            let parts: Vec<&str> = k.split(';').collect();
            if parts.len() != 2 {
                return Err(Error::Domain("Kubert input needs two parameters b;c".into()));
            }
            kubert_curve(&NfElement::parse(field, parts[0])?, &NfElement::parse(field, parts[1])?)
        }
        (None, None) => Err(Error::Domain("a curve is required".into())),
    }
}

fn execute(cmd: &Command) -> cmtorsion::Result<Value> {
    match cmd {
        Command::Classnum(a) => to_json(&class_number(&decompose(a.delta)?)),
        Command::Nu(a) => {
            let d = decompose(a.delta)?;
            Ok(json!({ "nu": d.nu, "two_torsion_class_count": two_torsion_class_count(&d) }))
        }
        Command::RealIdeals(a) => to_json(&real_primitive_ideals(&decompose(a.delta)?)),
        Command::Raydeg(a) => {
            let over = match a.over {
                OverArg::Q => Over::Q,
                OverArg::K => Over::K,
            };
            to_json(&ray_class_degree(a.delta, a.n, over)?)
        }
        Command::Cartan(a) => to_json(&cartan_unit_order(&decompose(a.delta)?, a.n)?),
        Command::Hcp(a) => to_json(&hilbert_class_poly(&decompose(a.delta)?)?),
        Command::Degseq(a) => to_json(&degree_sequence(&decompose(a.delta)?, a.m, a.n)?),
        Command::Torsion(a) => {
            let field = NumberField::parse(&a.field)?;
            let curve = parse_curve(&field, a)?;
            to_json(&torsion_subgroup(&curve)?.record())
        }
        Command::Twist(a) => {
            let field = NumberField::parse(&a.curve.field)?;
            let curve = parse_curve(&field, &a.curve)?;
            to_json(&quadratic_twist(&curve, &NfElement::parse(&field, &a.by)?)?.record())
        }
        Command::Iso(a) => {
            let field = NumberField::parse(&a.field)?;
            let e1 = Curve::parse(&field, &a.curve)?;
            let e2 = Curve::parse(&field, &a.other)?;
            to_json(&curves_isomorphic(&e1, &e2)?)
        }
        Command::Classify(a) => {
            let mode = if a.prime {
                DegreeMode::Prime
            } else if a.prime_squared {
                DegreeMode::PrimeSquared
            } else {
                DegreeMode::Odd
            };
            to_json(&classify_degree(a.degree, mode)?)
        }
        Command::PrimeTable(a) => to_json(&prime_degree_table(a.p)?),
        Command::VerifyTable1(a) => to_json(&verify_table1(a.rows.as_deref())?),
        Command::SgScan(a) => {
            let opts = SgScanOptions { jobs: a.jobs, ..SgScanOptions::default() };
            to_json(&sg_scan_with(a.x, &opts)?)
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record(&r).map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

/// Flattens a tabular result into CSV.
fn flatten(cmd: &Command, result: &Value) -> Result<String, String> {
    let empty = Vec::new();
    let arr = |v: &Value| v.as_array().cloned().unwrap_or_default();
    match cmd {
        Command::Degseq(_) => {
            let rows = result["degrees"]
                .as_array()
                .unwrap_or(&empty)
                .iter()
                .map(|d| vec![cell(&result["delta"]), cell(&result["m"]), cell(&result["n"]), cell(d)])
                .collect();
            csv_text(&["delta", "m", "n", "degree"], rows)
        }
        Command::SgScan(_) => {
            let rows = arr(&result["members"])
                .iter()
                .map(|r| ["k", "ell", "p", "h"].iter().map(|f| cell(&r[*f])).collect())
                .collect();
            csv_text(&["k", "ell", "p", "h"], rows)
        }
        Command::VerifyTable1(_) => {
            let f = ["index", "field", "curve", "delta", "expected", "computed", "pass"];
            let rows = arr(&result["rows"]).iter().map(|r| f.iter().map(|k| cell(&r[*k])).collect()).collect();
            csv_text(&f, rows)
        }
        Command::PrimeTable(_) => {
            let rows = arr(result)
                .iter()
                .map(|r| vec![cell(&r["field"]), cell(&r["field_name"]), cell(&r["delta"]), cell(&r["torsion"]["shape"])])
                .collect();
            csv_text(&["field", "field_name", "delta", "torsion"], rows)
        }
        Command::RealIdeals(_) => {
            let rows = arr(result)
                .iter()
                .map(|r| vec![cell(&r["kind"]), cell(&r["a"]), cell(&r["basis"][0]), cell(&r["basis"][1])])
                .collect();
            csv_text(&["kind", "a", "basis0", "basis1"], rows)
        }
        _ => Err(format!("csv output is not available for {}", cmd.name())),
    }
}

fn load_cache(stderr: &mut String) {
    let Ok(path) = std::env::var(CACHE_ENV) else { return };
    let Ok(text) = std::fs::read_to_string(&path) else { return };
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            [] => {}
            [d, h] => match (d.parse::<i64>(), h.parse::<u64>()) {
                (Ok(d), Ok(h)) => entries.push((d, h)),
                _ => stderr.push_str(&format!("{path}:{}: ignoring malformed cache line\n", i + 1)),
            },
            _ => stderr.push_str(&format!("{path}:{}: ignoring malformed cache line\n", i + 1)),
        }
    }
    seed_class_number_cache(entries);
}

fn store_cache(stderr: &mut String) {
    let Ok(path) = std::env::var(CACHE_ENV) else { return };
    let text: String = class_number_cache_snapshot().iter().map(|(d, h)| format!("{d} {h}\n")).collect();
    if let Err(e) = std::fs::write(&path, text) {
        stderr.push_str(&format!("could not write class number cache {path}: {e}\n"));
    }
}

/// Parses `argv` (including the program name), runs the command and returns the captured output.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if cli.format == Format::Csv && !cli.command.tabular() {
        return Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: --format csv is not available for {}\n", cli.command.name()),
        };
    }
    let mut stderr = String::new();
    load_cache(&mut stderr);
    let start = Instant::now();
    let outcome = execute(&cli.command);
    let timing_ms = start.elapsed().as_millis() as u64;
    store_cache(&mut stderr);
    let (code, result, status) = match outcome {
        Ok(v) => (0, v, Status::Ok),
        Err(e) => (1, Value::Null, Status::Error { message: e.to_string() }),
    };
    let record = CommandResult {
        command: cli.command.name().to_string(),
        inputs: cli.command.inputs(),
        result,
        timing_ms,
        status,
    };
    let stdout = if cli.format == Format::Csv && code == 0 {
        match flatten(&cli.command, &record.result) {
            Ok(s) => s,
            Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: stderr + &e },
        }
    } else {
        match serde_json::to_string(&record) {
            Ok(s) => s + "\n",
            Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: stderr + &e.to_string() },
        }
    };
    Outcome { code, stdout, stderr }
}
