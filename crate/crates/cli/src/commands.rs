use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::path::Path;

use boolgate::boolexpr::{parse, truth_table};
use boolgate::ham::hamiltonian;
use boolgate::linalg::log2_exact;
use boolgate::minimize::{equivalent, sop_expressions};
use boolgate::pauli::{decompose, spin_form};
use boolgate::synth::{map_from_matrix, map_from_truth_table, matrix_from_map, oracle_matrix};
use boolgate::{ComplexMatrix, Expr, PermutationSpec, TruthTable};
use num_complex::Complex64;

use crate::config::{Command, Format, Input, JobConfig};
use crate::error::{CliError, EXIT_DIMENSION_CAP, EXIT_PARSE, EXIT_VERIFICATION};
use crate::render;

/// Largest qubit count for the dense Hamiltonian and the 4^n Pauli words.
const DENSE_MAX_N: usize = 8;

/// Runs one job and returns the rendered output.
pub fn run(cfg: &JobConfig) -> Result<String, CliError> {
    match cfg.command {
        Command::Truth => truth(cfg),
        Command::Synth => synth(cfg),
        Command::Oracle => oracle(cfg),
        Command::Extract => extract(cfg),
        Command::Hamiltonian => hamiltonian_cmd(cfg),
        Command::Pauli => pauli(cfg),
        Command::Roundtrip => roundtrip(cfg),
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), CliError> {
    if n > cap {
        Err(CliError::new(
            EXIT_DIMENSION_CAP,
            format!("{n} bits exceeds the limit of {cap} (see --max-n)"),
        ))
    } else {
        Ok(())
    }
}

fn json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(&path.display().to_string(), e))
}

fn parse_exprs(texts: &[String], declared: Option<usize>) -> Result<Vec<Expr>, CliError> {
    texts
        .iter()
        .map(|t| parse(t, declared).map_err(CliError::from))
        .collect()
}

/// Truth table from expressions or a table file. Expressions share the
/// width `n`: the count of outputs for reversible use, else the highest
/// variable index.
fn load_table(cfg: &JobConfig, reversible: bool) -> Result<TruthTable, CliError> {
    let table = match &cfg.input {
        Input::Expr(text) => {
            let e = parse_exprs(std::slice::from_ref(text), None)?;
            let n = e[0].arity().max(1);
            check_cap(n, cfg.max_n)?;
            truth_table(&e, n)?
        }
        Input::Exprs(texts) => {
            let declared = reversible.then_some(texts.len());
            let e = parse_exprs(texts, declared)?;
            let n = declared
                .unwrap_or_else(|| e.iter().map(Expr::arity).max().unwrap_or(0))
                .max(1);
            check_cap(n, cfg.max_n)?;
            truth_table(&e, n)?
        }
        Input::Table(path) => {
            let tt = TruthTable::parse_text(&read(path)?)?;
            check_cap(tt.inputs(), cfg.max_n)?;
            tt
        }
        Input::Matrix(_) | Input::Perm(_) => {
            return Err(CliError::usage(
                "this command takes --expr, --exprs or --table",
            ))
        }
    };
    Ok(table)
}

/// Matrix file contents: dense JSON, permutation JSON, or bracketed rows of
/// real numbers.
fn load_matrix_file(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = read(path)?;
    let trimmed = text.trim_start();
    let bad = |msg: String| CliError::new(EXIT_PARSE, format!("{}: {msg}", path.display()));
    if trimmed.starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| bad(e.to_string()))?;
        if value.get("image").is_some() {
            let spec: PermutationSpec = serde_json::from_value(value).map_err(|e| {
                CliError::new(
                    crate::error::EXIT_NOT_PERMUTATION,
                    format!("{}: {e}", path.display()),
                )
            })?;
            return Ok(spec.to_dense());
        }
        return serde_json::from_value(value).map_err(|e| bad(e.to_string()));
    }
    let rows = trimmed
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|line| {
            let inner = line
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| bad(format!("expected a bracketed row, found {line:?}")))?;
            inner
                .split_whitespace()
                .map(|v| {
                    v.parse::<f64>()
                        .map(|re| Complex64::new(re, 0.0))
                        .map_err(|_| bad(format!("not a number: {v:?}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ComplexMatrix::from_rows(&rows)?)
}

fn load_dense(cfg: &JobConfig, cap: usize) -> Result<ComplexMatrix, CliError> {
    let m = match &cfg.input {
        Input::Matrix(path) => load_matrix_file(path)?,
        _ => load_permutation(cfg, cap)?.to_dense(),
    };
    if !m.is_square() {
        return Err(boolgate::Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        }
        .into());
    }
    check_cap(log2_exact(m.rows())?, cap)?;
    Ok(m)
}

fn load_permutation(cfg: &JobConfig, cap: usize) -> Result<PermutationSpec, CliError> {
    let spec = match &cfg.input {
        Input::Perm(list) => {
            let image: Vec<usize> =
                serde_json::from_str(list).map_err(|e| CliError::usage(format!("--perm: {e}")))?;
            PermutationSpec::new(image)?
        }
        Input::Matrix(path) => {
            let m = load_matrix_file(path)?;
            PermutationSpec::from_dense(&m, cfg.read_tol)?
        }
        Input::Exprs(_) | Input::Table(_) => {
            matrix_from_map(&map_from_truth_table(&load_table(cfg, true)?)?)
        }
        Input::Expr(_) => {
            return Err(CliError::usage(
                "a single --expr is not a gate; use oracle or --exprs",
            ))
        }
    };
    check_cap(log2_exact(spec.size())?, cap)?;
    Ok(spec)
}

fn truth(cfg: &JobConfig) -> Result<String, CliError> {
    let tt = load_table(cfg, false)?;
    Ok(match cfg.format {
        Format::Json => json(&render::table_json(&tt)),
        _ => render::table(&tt),
    })
}

fn synth(cfg: &JobConfig) -> Result<String, CliError> {
    let map = map_from_truth_table(&load_table(cfg, true)?)?;
    let dense = matrix_from_map(&map).to_dense();
    Ok(match cfg.format {
        Format::Json => json(&dense),
        f => render::matrix(&dense, f),
    })
}

fn oracle(cfg: &JobConfig) -> Result<String, CliError> {
    let tt = load_table(cfg, false)?;
    check_cap(tt.inputs() + 1, cfg.max_n)?;
    let dense = oracle_matrix(&tt)?.to_dense();
    Ok(match cfg.format {
        Format::Json => json(&dense),
        f => render::matrix(&dense, f),
    })
}

/// Table and simplified expressions of a gate; fails with the verification
/// code if any expression disagrees with its column.
fn extraction(spec: &PermutationSpec) -> Result<(TruthTable, Vec<Expr>), CliError> {
    let tt = map_from_matrix(spec)?.to_truth_table();
    let exprs = sop_expressions(&tt);
    if let Some(j) = (0..exprs.len()).find(|&j| !equivalent(&exprs[j], &tt, j)) {
        return Err(CliError::new(
            EXIT_VERIFICATION,
            format!(
                "simplified expression for y{} disagrees with the table",
                j + 1
            ),
        ));
    }
    Ok((tt, exprs))
}

fn extract(cfg: &JobConfig) -> Result<String, CliError> {
    let spec = load_permutation(cfg, cfg.max_n)?;
    let (tt, exprs) = extraction(&spec)?;
    Ok(match cfg.format {
        Format::Json => {
            let mut v = render::table_json(&tt);
            v["expressions"] = exprs.iter().map(|e| e.to_compact_string()).collect();
            json(&v)
        }
        f => render::table(&tt) + &render::expressions(&exprs, f),
    })
}

fn hamiltonian_cmd(cfg: &JobConfig) -> Result<String, CliError> {
    let spec = load_permutation(cfg, cfg.max_n.min(DENSE_MAX_N))?;
    let result = hamiltonian(&spec);
    if result.residual > cfg.tol {
        return Err(CliError::new(
            EXIT_VERIFICATION,
            format!(
                "residual {:e} exceeds tolerance {:e}",
                result.residual, cfg.tol
            ),
        ));
    }
    Ok(match cfg.format {
        Format::Json => json(&result),
        f => format!(
            "K =\n{}H =\n{}residual = {:e}\n",
            render::matrix(&result.k, f),
            render::matrix(&result.h, f),
            result.residual
        ),
    })
}

fn pauli(cfg: &JobConfig) -> Result<String, CliError> {
    let cap = cfg.max_n.min(DENSE_MAX_N);
    let target = if cfg.direct {
        load_dense(cfg, cap)?
    } else {
        let spec = load_permutation(cfg, cap)?;
        let result = hamiltonian(&spec);
        if result.residual > cfg.tol {
            return Err(CliError::new(
                EXIT_VERIFICATION,
                format!(
                    "residual {:e} exceeds tolerance {:e}",
                    result.residual, cfg.tol
                ),
            ));
        }
        result.h
    };
    let mut sum = decompose(&target)?;
    if cfg.spin {
        sum = spin_form(&sum);
    }
    if cfg.quarter_pi {
        sum = sum.scaled(1.0 / FRAC_PI_4);
    }
    Ok(match cfg.format {
        Format::Json => json(&sum),
        _ => sum.to_string(),
    })
}

fn roundtrip(cfg: &JobConfig) -> Result<String, CliError> {
    let Input::Expr(_) = cfg.input else {
        return Err(CliError::usage("roundtrip takes a single --expr"));
    };
    let tt = load_table(cfg, false)?;
    check_cap(tt.inputs() + 1, cfg.max_n)?;
    let spec = oracle_matrix(&tt)?;
    let (map_table, exprs) = extraction(&spec)?;

    // the recovered map must be (x, y) -> (x, y ^ f(x))
    let n = tt.inputs();
    for (state, row) in map_table.rows().iter().enumerate() {
        let expect = state ^ usize::from(tt.output_bit(state >> 1, 0));
        if boolgate::encode(row) != expect {
            return Err(CliError::new(
                EXIT_VERIFICATION,
                format!("recovered map differs from the oracle at input {state} (n = {n})"),
            ));
        }
    }

    let dense = spec.to_dense();
    Ok(match cfg.format {
        Format::Json => {
            let mut v = render::table_json(&map_table);
            v["matrix"] = serde_json::to_value(&dense).expect("serializable");
            v["expressions"] = exprs.iter().map(|e| e.to_compact_string()).collect();
            v["equivalent"] = true.into();
            json(&v)
        }
        f => {
            render::matrix(&dense, f) + &render::table(&map_table) + &render::expressions(&exprs, f)
        }
    })
}
