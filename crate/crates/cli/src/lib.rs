//! The `qcoh` command line.
//!
//! Every subcommand writes its result to `out` and any error to `err` as a
//! single line `error[E_CODE]: message`. Exit status is 0 on success, 1 when
//! a certificate or solver fails, and 2 for usage and parse errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use qcoh_core::blowup::{self, BlowupBasis};
use qcoh_core::expr::{self, ExprError};
use qcoh_core::gkm::{self, GkmError};
use qcoh_core::morse::{self, MorseError, MAX_N};
use qcoh_core::quantum::solver::{self, SolverError};
use qcoh_core::quantum::QuantumError;
use qcoh_core::{GWQuery, MomentAssignment, QuantumRing, Rational, SphereClassVector, SubsetPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "qcoh",
    version,
    about = "Exact quantum and equivariant cohomology of (P^1)^n and the blow-up of P^2"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Dim {
    /// Number of P^1 factors.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_N as i64))]
    n: u32,
}

impl Dim {
    fn get(&self) -> usize {
        self.n as usize
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quantum product of two classes.
    Mul {
        #[command(flatten)]
        dim: Dim,
        lhs: String,
        rhs: String,
    },
    /// Classical cup product of two classes.
    Cup {
        #[command(flatten)]
        dim: Dim,
        lhs: String,
        rhs: String,
    },
    /// Seidel element of the maximal circle action applied to a class.
    Seidel {
        #[command(flatten)]
        dim: Dim,
        expr: String,
    },
    /// Three-point invariant <x_I, x_J, x_K>_d.
    Gw {
        #[command(flatten)]
        dim: Dim,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long)]
        k: String,
        /// Sphere class as comma-separated coefficients.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d: Vec<i64>,
    },
    /// Expand an equivariant class in the a{I} basis.
    Decompose {
        #[command(flatten)]
        dim: Dim,
        expr: String,
    },
    /// Restriction of an equivariant class to a fixed point.
    Restrict {
        #[command(flatten)]
        dim: Dim,
        expr: String,
        #[arg(long)]
        point: String,
    },
    /// Equivariant Chern classes c_1..c_n.
    Chern {
        #[command(flatten)]
        dim: Dim,
    },
    /// Recover the quantum product from the Seidel element by linear algebra.
    Solve {
        #[command(flatten)]
        dim: Dim,
    },
    /// Check that no higher-order Seidel term is possible.
    Certify {
        #[command(flatten)]
        dim: Dim,
    },
    /// Fixed points, gradient spheres and moment values.
    Morse {
        #[command(flatten)]
        dim: Dim,
        /// Comma-separated positive rationals, one per factor; defaults to all 1.
        #[arg(long, value_delimiter = ',')]
        areas: Option<Vec<String>>,
        #[arg(value_enum)]
        view: MorseView,
    },
    /// The one-point blow-up of P^2.
    Blowup {
        #[command(subcommand)]
        command: BlowupCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MorseView {
    Points,
    Edges,
    Moment,
}

#[derive(Debug, Subcommand)]
enum BlowupCommand {
    /// Quantum product.
    Mul { lhs: String, rhs: String },
    /// Seidel element of the circle action applied to a class.
    Seidel { expr: String },
    /// Signs of the class-E invariants solved from the product table.
    Signs,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ExprError),
    #[error("{message}")]
    Failure { code: &'static str, message: String },
    #[error("{message}")]
    Invalid { code: &'static str, message: String },
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "E_USAGE",
            CliError::Parse(ExprError::Syntax { .. }) => "E_SYNTAX",
            CliError::Parse(ExprError::UnknownGenerator { .. }) => "E_UNKNOWN_GENERATOR",
            CliError::Parse(ExprError::IndexOutOfRange { .. }) => "E_INDEX_RANGE",
            CliError::Parse(ExprError::Evaluation(_)) => "E_EVAL",
            CliError::Failure { code, .. } | CliError::Invalid { code, .. } => code,
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure { .. } => 1,
            _ => 2,
        }
    }
}

fn invalid(code: &'static str, e: impl std::fmt::Display) -> CliError {
    CliError::Invalid {
        code,
        message: e.to_string(),
    }
}

impl From<QuantumError> for CliError {
    fn from(e: QuantumError) -> Self {
        invalid("E_QUANTUM", e)
    }
}

impl From<MorseError> for CliError {
    fn from(e: MorseError) -> Self {
        invalid("E_MORSE", e)
    }
}

impl From<GkmError> for CliError {
    fn from(e: GkmError) -> Self {
        match e {
            GkmError::NotInSpan(_) => CliError::Failure {
                code: "E_NOT_IN_SPAN",
                message: e.to_string(),
            },
            other => invalid("E_GKM", other),
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Failure {
            code: "E_SOLVER",
            message: e.to_string(),
        }
    }
}

/// Text and JSON renderings of a successful result.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
        }
    }
}

/// Run the command line on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "error[E_USAGE]: {}", first_line(&e.to_string()));
            return 2;
        }
    };
    let format = cli.format;
    let (result, status) = execute(cli.command);
    match result {
        Ok(output) => {
            let written = match format {
                Format::Text => write!(out, "{}", output.text),
                Format::Json => writeln!(out, "{}", output.json),
            };
            if written.is_err() {
                return 2;
            }
            status
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {}", e.code(), first_line(&e.to_string()));
            e.exit_code()
        }
    }
}

fn first_line(s: &str) -> String {
    s.lines()
        .map(|l| l.trim_start_matches("error: ").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("")
        .to_string()
}

fn execute(command: Command) -> (Result<Output, CliError>, i32) {
    match command {
        Command::Certify { dim } => certify(dim.get()),
        other => (dispatch(other), 0),
    }
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

fn dispatch(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Mul { dim, lhs, rhs } => {
            let ring = QuantumRing::new(dim.get())?;
            let a = expr::parse_quantum(&lhs, &ring)?;
            let b = expr::parse_quantum(&rhs, &ring)?;
            let c = a.qmul(&b)?;
            Ok(Output::new(format!("{c}\n"), c.to_json()))
        }
        Command::Cup { dim, lhs, rhs } => {
            let ring = QuantumRing::new(dim.get())?;
            let a = expr::parse_quantum(&lhs, &ring)?;
            let b = expr::parse_quantum(&rhs, &ring)?;
            let c = a.cup(&b)?;
            Ok(Output::new(format!("{c}\n"), c.to_json()))
        }
        Command::Seidel { dim, expr: text } => {
            let ring = QuantumRing::new(dim.get())?;
            let c = expr::parse_quantum(&text, &ring)?.seidel();
            Ok(Output::new(format!("{c}\n"), c.to_json()))
        }
        Command::Gw { dim, i, j, k, d } => {
            let n = dim.get();
            let ring = QuantumRing::new(n)?;
            let query = GWQuery::new(
                SubsetPoint::parse(n, &i)?,
                SubsetPoint::parse(n, &j)?,
                SubsetPoint::parse(n, &k)?,
                SphereClassVector::new(d),
            )?;
            let value = ring.gw_coefficient(&query)?;
            Ok(Output::new(format!("{value}\n"), json!({ "value": value.to_string() })))
        }
        Command::Decompose { dim, expr: text } => {
            let n = dim.get();
            let class = expr::parse_equivariant(&text, n)?;
            let coeffs = class.decompose()?;
            let mut text_lines = Vec::new();
            let mut map = serde_json::Map::new();
            for (subset, coeff) in coeffs.iter().filter(|(_, c)| !c.is_zero()) {
                text_lines.push(format!("a{subset}: {coeff}"));
                map.insert(subset.to_string(), Value::String(coeff.to_string()));
            }
            if text_lines.is_empty() {
                text_lines.push("0".to_string());
            }
            Ok(Output::new(lines(text_lines), Value::Object(map)))
        }
        Command::Restrict { dim, expr: text, point } => {
            let n = dim.get();
            let class = expr::parse_equivariant(&text, n)?;
            let p = SubsetPoint::parse(n, &point)?;
            let value = class.restrict(&p)?;
            Ok(Output::new(
                format!("{value}\n"),
                json!({ "point": p.to_string(), "value": value.to_string() }),
            ))
        }
        Command::Chern { dim } => {
            let classes = gkm::chern_series(dim.get())?;
            let mut text_lines = Vec::new();
            let mut map = serde_json::Map::new();
            for (k, c) in classes.iter().enumerate() {
                text_lines.push(format!("c{} = {c}", k + 1));
                map.insert(format!("c{}", k + 1), c.to_json());
            }
            Ok(Output::new(lines(text_lines), Value::Object(map)))
        }
        Command::Solve { dim } => {
            let table = solver::solve_structure_constants(dim.get())?;
            let entries: Vec<Value> = table
                .entries
                .iter()
                .map(|((subset, j), v)| json!({ "subset": subset.to_string(), "j": j, "value": v.to_json() }))
                .collect();
            let text = format!("unknowns: {}\nequations: {}\n{table}", table.unknowns, table.equations);
            Ok(Output::new(
                text,
                json!({ "unknowns": table.unknowns, "equations": table.equations, "entries": entries }),
            ))
        }
        Command::Certify { .. } => unreachable!("handled by execute"),
        Command::Morse { dim, areas, view } => morse_view(dim.get(), areas, view),
        Command::Blowup { command } => blowup_command(command),
    }
}

fn certify(n: usize) -> (Result<Output, CliError>, i32) {
    let triples = morse::higher_order_infeasibility(n);
    if triples.is_empty() {
        return (
            Ok(Output::new("EMPTY\n", json!({ "status": "EMPTY", "triples": [] }))),
            0,
        );
    }
    let text = lines(triples.iter().map(|(i, j, k)| format!("({i},{j},{k})")));
    let json =
        json!({ "status": "NONEMPTY", "triples": triples.iter().map(|t| json!([t.0, t.1, t.2])).collect::<Vec<_>>() });
    (Ok(Output::new(text, json)), 1)
}

fn parse_areas(n: usize, areas: Option<Vec<String>>) -> Result<MomentAssignment, CliError> {
    let Some(raw) = areas else {
        return Ok(MomentAssignment::unit(n));
    };
    if raw.len() != n {
        return Err(CliError::Usage(format!("--areas needs {n} values, got {}", raw.len())));
    }
    let values = raw
        .iter()
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Usage(format!("invalid rational `{s}` in --areas")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MomentAssignment::new(values)?)
}

fn morse_view(n: usize, areas: Option<Vec<String>>, view: MorseView) -> Result<Output, CliError> {
    let m = parse_areas(n, areas)?;
    let mut text_lines = Vec::new();
    let mut items = Vec::new();
    match view {
        MorseView::Points => {
            for p in SubsetPoint::all(n) {
                let index = morse::morse_index(&p);
                let weight = morse::weight_sum(&p);
                text_lines.push(format!("{p} index={index} weight_sum={weight}"));
                items.push(json!({ "point": p.to_string(), "index": index, "weight_sum": weight }));
            }
        }
        MorseView::Edges => {
            for (from, to, i) in morse::all_edges(n) {
                let a = morse::area(&SphereClassVector::basis(n, i), &m)?;
                text_lines.push(format!("{from} -> {to} sphere=A{i} area={a}"));
                items.push(
                    json!({ "from": from.to_string(), "to": to.to_string(), "sphere": i, "area": a.to_string() }),
                );
            }
        }
        MorseView::Moment => {
            for p in SubsetPoint::all(n) {
                let h = morse::moment_value(&p, &m)?;
                text_lines.push(format!("{p} H={h}"));
                items.push(json!({ "point": p.to_string(), "moment": h.to_string() }));
            }
        }
    }
    Ok(Output::new(lines(text_lines), Value::Array(items)))
}

fn blowup_command(command: BlowupCommand) -> Result<Output, CliError> {
    match command {
        BlowupCommand::Mul { lhs, rhs } => {
            let c = expr::parse_blowup(&lhs)?.bmul(&expr::parse_blowup(&rhs)?);
            Ok(Output::new(format!("{c}\n"), c.to_json()))
        }
        BlowupCommand::Seidel { expr: text } => {
            let c = blowup::seidel_blowup(&expr::parse_blowup(&text)?);
            Ok(Output::new(format!("{c}\n"), c.to_json()))
        }
        BlowupCommand::Signs => {
            let signs = blowup::gw_sign_solver().map_err(|e| CliError::Failure {
                code: "E_SOLVER",
                message: e.to_string(),
            })?;
            let mut text_lines = vec!["# class E, derived and table-consistent".to_string()];
            let mut items = Vec::new();
            for (triple, sign) in signs.iter().rev() {
                let names = triple.map(BlowupBasis::symbol);
                text_lines.push(format!("<{},{},{}>_E = {sign}", names[0], names[1], names[2]));
                items.push(json!({ "triple": names, "value": sign }));
            }
            Ok(Output::new(
                lines(text_lines),
                json!({ "class": "E", "status": "derived", "signs": items }),
            ))
        }
    }
}
