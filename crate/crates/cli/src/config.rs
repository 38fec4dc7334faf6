use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Print the truth table of the given expressions.
    Truth,
    /// Reversible expressions to their permutation matrix.
    Synth,
    /// Single expression f to the oracle (x, y) -> (x, y ^ f(x)).
    Oracle,
    /// Permutation matrix to truth table and simplified expressions.
    Extract,
    /// Permutation matrix to K, H = iK and the exponential residual.
    Hamiltonian,
    /// Pauli (or spin) expansion of a gate's Hamiltonian or of a matrix.
    Pauli,
    /// Oracle, extraction and equivalence check for one expression.
    Roundtrip,
}

#[derive(Debug, Parser)]
#[command(
    name = "boolgate",
    version,
    about = "Boolean functions as permutation-matrix quantum gates"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,

    /// A single expression, e.g. "x1 & !x2".
    #[arg(long)]
    pub expr: Option<String>,

    /// Output expressions separated by ';', y1 first.
    #[arg(long)]
    pub exprs: Option<String>,

    /// Truth table file with lines "<input bits> -> <output bits>".
    #[arg(long, value_name = "FILE")]
    pub table: Option<PathBuf>,

    /// Matrix file: matrix JSON, permutation JSON, or bracketed rows.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,

    /// Permutation image as a list, e.g. "[2,3,1,0]".
    #[arg(long, value_name = "LIST")]
    pub perm: Option<String>,

    /// Write output here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[arg(long)]
    pub json: bool,

    /// Render like the original program listing: `*`, `+`, `NOT[...]`,
    /// variables named from x0, matrices indexed with x1 as the least
    /// significant bit.
    #[arg(long)]
    pub paper_style: bool,

    /// Spell out the x0 naming of --paper-style (accepted, already implied).
    #[arg(long)]
    pub zero_based: bool,

    /// Verification tolerance (exponential residual).
    #[arg(long, value_name = "X", default_value_t = 1e-10)]
    pub tol: f64,

    /// Tolerance for reading dense matrices as permutations.
    #[arg(long, value_name = "X", default_value_t = boolgate::linalg::PERMUTATION_TOL)]
    pub read_tol: f64,

    /// Largest number of qubits (bits) accepted; hamiltonian and pauli stop at 8.
    #[arg(long, value_name = "N", default_value_t = 10)]
    pub max_n: usize,

    /// pauli: expand in spin matrices S_i = σ_i/2.
    #[arg(long)]
    pub spin: bool,

    /// pauli: report coefficients in units of π/4.
    #[arg(long)]
    pub quarter_pi: bool,

    /// pauli: expand the input matrix itself instead of the gate's Hamiltonian.
    #[arg(long)]
    pub direct: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Expr(String),
    Exprs(Vec<String>),
    Table(PathBuf),
    Matrix(PathBuf),
    Perm(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Paper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub command: Command,
    pub input: Input,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tol: f64,
    pub read_tol: f64,
    pub max_n: usize,
    pub spin: bool,
    pub quarter_pi: bool,
    pub direct: bool,
}

impl TryFrom<Args> for JobConfig {
    type Error = CliError;

    fn try_from(a: Args) -> Result<Self, CliError> {
        let mut sources = Vec::new();
        if let Some(e) = a.expr {
            sources.push(Input::Expr(e));
        }
        if let Some(e) = a.exprs {
            sources.push(Input::Exprs(
                e.split(';').map(|s| s.trim().to_string()).collect(),
            ));
        }
        if let Some(p) = a.table {
            sources.push(Input::Table(p));
        }
        if let Some(p) = a.matrix {
            sources.push(Input::Matrix(p));
        }
        if let Some(p) = a.perm {
            sources.push(Input::Perm(p));
        }
        if sources.len() != 1 {
            return Err(CliError::usage(format!(
                "exactly one of --expr, --exprs, --table, --matrix, --perm is required ({} given)",
                sources.len()
            )));
        }
        let format = match (a.json, a.paper_style) {
            (true, true) => return Err(CliError::usage("--json and --paper-style are exclusive")),
            (true, false) => Format::Json,
            (false, true) => Format::Paper,
            (false, false) if a.zero_based => {
                return Err(CliError::usage("--zero-based requires --paper-style"))
            }
            (false, false) => Format::Text,
        };
        if !(a.tol > 0.0 && a.read_tol > 0.0) {
            return Err(CliError::usage("tolerances must be positive"));
        }
        Ok(JobConfig {
            command: a.command,
            input: sources.remove(0),
            out: a.out,
            format,
            tol: a.tol,
            read_tol: a.read_tol,
            max_n: a.max_n,
            spin: a.spin,
            quarter_pi: a.quarter_pi,
            direct: a.direct,
        })
    }
}
