//! Text renderers shared by the commands.

use boolgate::{ComplexMatrix, Expr, TruthTable};

use crate::config::Format;

/// Bracketed matrix rows. The listing style indexes basis states with x1 as
/// the least significant bit, so rows and columns are bit-reversed first.
pub fn matrix(m: &ComplexMatrix, format: Format) -> String {
    match format {
        Format::Paper => m
            .reverse_bit_order()
            .map(|r| r.render_text())
            .unwrap_or_else(|_| m.render_text()),
        _ => m.render_text(),
    }
}

pub fn table(tt: &TruthTable) -> String {
    tt.to_string()
}

/// Output expressions: `yj = ...` lines, or a bracketed column with each
/// entry centered in the listing style.
pub fn expressions(exprs: &[Expr], format: Format) -> String {
    match format {
        Format::Paper => {
            let lines: Vec<String> = exprs.iter().map(|e| e.to_paper_style(true)).collect();
            centered_column(&lines)
        }
        _ => exprs
            .iter()
            .enumerate()
            .map(|(j, e)| format!("y{} = {}\n", j + 1, e.to_compact_string()))
            .collect(),
    }
}

fn centered_column(lines: &[String]) -> String {
    let width = lines.iter().map(String::len).max().unwrap_or(0);
    lines
        .iter()
        .map(|s| {
            let pad = width - s.len();
            let left = pad.div_ceil(2);
            format!("[{}{}{}]\n", " ".repeat(left), s, " ".repeat(pad - left))
        })
        .collect()
}

pub fn table_json(tt: &TruthTable) -> serde_json::Value {
    serde_json::json!({
        "inputs": tt.inputs(),
        "outputs": tt.outputs(),
        "rows": tt.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    })
}
