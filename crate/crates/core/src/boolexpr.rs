//! Boolean expressions over `x1, x2, ...`.
//!
//! Concrete syntax:
//!
//! ```text
//! expr := or
//! or   := xor ('|' xor)*
//! xor  := and ('^' and)*
//! and  := not ('&' not)*
//! not  := '!' not | atom
//! atom := '0' | '1' | 'x' digits | '(' expr ')'
//! ```
//!
//! Binary operators are left-associative; whitespace is ignored.

use std::fmt;

use crate::bits::{decode, BitVector, TruthTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(bool),
    /// 1-based variable index.
    Var(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Xor(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    And,
    Or,
    Xor,
}

impl BinOp {
    fn precedence(self) -> u8 {
        match self {
            BinOp::Or => 0,
            BinOp::Xor => 1,
            BinOp::And => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Xor => "^",
        }
    }
}

impl Expr {
    pub fn var(j: usize) -> Expr {
        Expr::Var(j)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    pub fn xor(a: Expr, b: Expr) -> Expr {
        Expr::Xor(Box::new(a), Box::new(b))
    }

    /// Highest variable index referenced, 0 for a constant expression.
    pub fn arity(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(j) => *j,
            Expr::Not(e) => e.arity(),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Xor(a, b) => a.arity().max(b.arity()),
        }
    }

    fn binary(&self) -> Option<(BinOp, &Expr, &Expr)> {
        match self {
            Expr::And(a, b) => Some((BinOp::And, a, b)),
            Expr::Or(a, b) => Some((BinOp::Or, a, b)),
            Expr::Xor(a, b) => Some((BinOp::Xor, a, b)),
            _ => None,
        }
    }

    /// Evaluates under the assignment `x`, which must cover every variable.
    pub fn eval(&self, x: &BitVector) -> Result<bool> {
        let arity = self.arity();
        if x.width() < arity {
            return Err(Error::WidthMismatch {
                expected: arity,
                actual: x.width(),
            });
        }
        Ok(self.eval_unchecked(x.as_u64(), x.width()))
    }

    fn eval_unchecked(&self, bits: u64, width: usize) -> bool {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(j) => bits >> (width - j) & 1 == 1,
            Expr::Not(e) => !e.eval_unchecked(bits, width),
            Expr::And(a, b) => a.eval_unchecked(bits, width) & b.eval_unchecked(bits, width),
            Expr::Or(a, b) => a.eval_unchecked(bits, width) | b.eval_unchecked(bits, width),
            Expr::Xor(a, b) => a.eval_unchecked(bits, width) ^ b.eval_unchecked(bits, width),
        }
    }

    /// Renders with parentheses only where precedence requires them.
    pub fn to_compact_string(&self) -> String {
        let mut out = String::new();
        write_compact(self, &mut out, &|j| format!("x{j}"), &AsciiOps);
        out
    }

    /// Renders in the `*` / `+` / `NOT[...]` style of the original listing.
    pub fn to_paper_style(&self, zero_based: bool) -> String {
        let mut out = String::new();
        let offset = usize::from(zero_based);
        write_compact(self, &mut out, &|j| format!("x{}", j - offset), &PaperOps);
        out
    }
}

trait OpStyle {
    fn binary(&self, op: BinOp) -> &'static str;
    /// Opening and closing text around a negated operand.
    fn not(&self) -> (&'static str, &'static str);
    /// Whether a binary operand of NOT needs its own parentheses.
    fn not_wraps_binary(&self) -> bool;
}

struct AsciiOps;

impl OpStyle for AsciiOps {
    fn binary(&self, op: BinOp) -> &'static str {
        match op {
            BinOp::And => " & ",
            BinOp::Or => " | ",
            BinOp::Xor => " ^ ",
        }
    }

    fn not(&self) -> (&'static str, &'static str) {
        ("!", "")
    }

    fn not_wraps_binary(&self) -> bool {
        true
    }
}

struct PaperOps;

impl OpStyle for PaperOps {
    fn binary(&self, op: BinOp) -> &'static str {
        match op {
            BinOp::And => "*",
            BinOp::Or => "+",
            BinOp::Xor => "^",
        }
    }

    fn not(&self) -> (&'static str, &'static str) {
        ("NOT[", "]")
    }

    fn not_wraps_binary(&self) -> bool {
        false
    }
}

fn write_compact(e: &Expr, out: &mut String, name: &dyn Fn(usize) -> String, style: &dyn OpStyle) {
    match e {
        Expr::Const(c) => out.push(if *c { '1' } else { '0' }),
        Expr::Var(j) => out.push_str(&name(*j)),
        Expr::Not(inner) => {
            let (open, close) = style.not();
            out.push_str(open);
            let wrap = style.not_wraps_binary() && inner.binary().is_some();
            wrap_if(wrap, out, |o| write_compact(inner, o, name, style));
            out.push_str(close);
        }
        _ => {
            let (op, a, b) = e.binary().expect("binary node");
            let left_wrap = a
                .binary()
                .is_some_and(|(o, _, _)| o.precedence() < op.precedence());
            let right_wrap = b
                .binary()
                .is_some_and(|(o, _, _)| o.precedence() <= op.precedence());
            wrap_if(left_wrap, out, |o| write_compact(a, o, name, style));
            out.push_str(style.binary(op));
            wrap_if(right_wrap, out, |o| write_compact(b, o, name, style));
        }
    }
}

fn wrap_if(wrap: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if wrap {
        out.push('(');
    }
    body(out);
    if wrap {
        out.push(')');
    }
}

/// The default rendering parenthesizes every binary subterm whose operator
/// differs from its parent's, e.g. `(x1 & x2) | x3`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => f.write_str(if *c { "1" } else { "0" }),
            Expr::Var(j) => write!(f, "x{j}"),
            Expr::Not(inner) => {
                if inner.binary().is_some() {
                    write!(f, "!({inner})")
                } else {
                    write!(f, "!{inner}")
                }
            }
            _ => {
                let (op, a, b) = self.binary().expect("binary node");
                match a.binary() {
                    Some((o, _, _)) if o != op => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " {} ", op.symbol())?;
                if b.binary().is_some() {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

/// Parses `text`. With `declared_arity`, every referenced variable must be
/// within it.
pub fn parse(text: &str, declared_arity: Option<usize>) -> Result<Expr> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = parser.or()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    if let Some(declared) = declared_arity {
        let index = expr.arity();
        if index > declared {
            return Err(Error::ArityTooSmall { index, declared });
        }
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn or(&mut self) -> Result<Expr> {
        let mut lhs = self.xor()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            lhs = Expr::or(lhs, self.xor()?);
        }
        Ok(lhs)
    }

    fn xor(&mut self) -> Result<Expr> {
        let mut lhs = self.and()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            lhs = Expr::xor(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut lhs = self.not()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            lhs = Expr::and(lhs, self.not()?);
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'!') {
            self.pos += 1;
            return Ok(Expr::not(self.not()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(Expr::Const(false))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Expr::Const(true))
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let digits_start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos == digits_start {
                    return Err(self.error("expected digits after 'x'"));
                }
                let digits =
                    std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii digits");
                let index: usize = digits.parse().map_err(|_| Error::Syntax {
                    position: digits_start,
                    message: "variable index too large".into(),
                })?;
                if index == 0 {
                    return Err(Error::ZeroVariable { position: start });
                }
                Ok(Expr::Var(index))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.or()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected '0', '1', a variable, '!' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Tabulates `exprs` over all inputs of width `n`; output `j` is `exprs[j]`.
pub fn truth_table(exprs: &[Expr], n: usize) -> Result<TruthTable> {
    if let Some(index) = exprs.iter().map(Expr::arity).find(|&a| a > n) {
        return Err(Error::ArityTooSmall { index, declared: n });
    }
    let m = exprs.len();
    TruthTable::from_fn(n, m, |x| {
        let bits = exprs
            .iter()
            .map(|e| e.eval(x))
            .collect::<Result<Vec<_>>>()?;
        BitVector::from_bits(&bits)
    })
}

/// Checks `e` against output `j` of `tt` over every input.
pub fn agrees_with(e: &Expr, tt: &TruthTable, j: usize) -> Result<bool> {
    let n = tt.inputs();
    for k in 0..1usize << n {
        if e.eval(&decode(k, n)?)? != tt.output_bit(k, j) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(j: usize) -> Expr {
        Expr::var(j)
    }

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("x1 & !x2", None).unwrap(),
            Expr::and(x(1), Expr::not(x(2)))
        );
        assert_eq!(parse("x1 ^ x2", None).unwrap(), Expr::xor(x(1), x(2)));
        let majority = Expr::or(
            Expr::or(Expr::and(x(1), x(2)), Expr::and(x(1), x(3))),
            Expr::and(x(2), x(3)),
        );
        assert_eq!(
            parse("(x1 & x2) | (x1 & x3) | (x2 & x3)", None).unwrap(),
            majority
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("x1 | x2 ^ x3 & !x4", None).unwrap(),
            Expr::or(x(1), Expr::xor(x(2), Expr::and(x(3), Expr::not(x(4)))))
        );
        assert_eq!(
            parse("x1 ^ x2 ^ x3", None).unwrap(),
            Expr::xor(Expr::xor(x(1), x(2)), x(3))
        );
        assert_eq!(parse("!!x1", None).unwrap(), Expr::not(Expr::not(x(1))));
        assert_eq!(parse(" ( 1 ) ", None).unwrap(), Expr::Const(true));
        assert_eq!(parse("x12", None).unwrap(), x(12));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse("x1 & x0", None),
            Err(Error::ZeroVariable { position: 5 })
        );
        assert_eq!(
            parse("x3", Some(2)),
            Err(Error::ArityTooSmall {
                index: 3,
                declared: 2
            })
        );
        assert!(matches!(
            parse("x1 &", None),
            Err(Error::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse("(x1", None),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(
            parse("x1 x2", None),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(parse("y1", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x", None), Err(Error::Syntax { .. })));
        assert!(parse("", None).is_err());
    }

    #[test]
    fn eval_examples() {
        let e = parse("x1 & !x2", None).unwrap();
        assert!(e.eval(&bv("10")).unwrap());
        assert!(!parse("x1 ^ x2", None).unwrap().eval(&bv("11")).unwrap());
        assert!(!Expr::Const(false).eval(&bv("1")).unwrap());
        assert!(e.eval(&bv("1")).is_err());
    }

    #[test]
    fn xor_truth_table_matches_definition() {
        let e = parse("x1 ^ x2", None).unwrap();
        for (input, out) in [("00", false), ("01", true), ("10", true), ("11", false)] {
            assert_eq!(e.eval(&bv(input)).unwrap(), out);
        }
    }

    #[test]
    fn truth_table_examples() {
        let cnot = truth_table(&[x(1), parse("x1 ^ x2", None).unwrap()], 2).unwrap();
        assert_eq!(cnot.rows(), &[bv("00"), bv("01"), bv("11"), bv("10")]);

        let swapish = truth_table(&[Expr::not(x(2)), x(1)], 2).unwrap();
        assert_eq!(swapish.rows(), &[bv("10"), bv("00"), bv("11"), bv("01")]);

        let zero = truth_table(&[Expr::Const(false)], 1).unwrap();
        assert_eq!(zero.rows(), &[bv("0"), bv("0")]);

        assert!(truth_table(&[x(3)], 2).is_err());
    }

    #[test]
    fn format_examples() {
        assert_eq!(Expr::and(x(1), Expr::not(x(2))).to_string(), "x1 & !x2");
        assert_eq!(
            Expr::or(Expr::and(x(1), x(2)), x(3)).to_string(),
            "(x1 & x2) | x3"
        );
        assert_eq!(Expr::xor(x(1), Expr::Const(true)).to_string(), "x1 ^ 1");
        assert_eq!(Expr::not(Expr::or(x(1), x(2))).to_string(), "!(x1 | x2)");
    }

    #[test]
    fn compact_and_paper_style() {
        let e = parse("x1 & !x2 & !x3 | !x1 & x3 | x2 & x3", None).unwrap();
        assert_eq!(e.to_compact_string(), "x1 & !x2 & !x3 | !x1 & x3 | x2 & x3");
        assert_eq!(
            e.to_paper_style(true),
            "x0*NOT[x1]*NOT[x2]+NOT[x0]*x2+x1*x2"
        );
        assert_eq!(
            e.to_paper_style(false),
            "x1*NOT[x2]*NOT[x3]+NOT[x1]*x3+x2*x3"
        );
        let nested = parse("!(x1 | x2) & (x1 ^ x2)", None).unwrap();
        assert_eq!(nested.to_compact_string(), "!(x1 | x2) & (x1 ^ x2)");
        assert_eq!(nested.to_paper_style(false), "NOT[x1+x2]*(x1^x2)");
    }

    /// Recursive reference evaluator over an explicit assignment vector.
    fn reference_eval(e: &Expr, assignment: &[bool]) -> bool {
        match e {
            Expr::Const(c) => *c,
            Expr::Var(j) => assignment[j - 1],
            Expr::Not(a) => !reference_eval(a, assignment),
            Expr::And(a, b) => reference_eval(a, assignment) && reference_eval(b, assignment),
            Expr::Or(a, b) => reference_eval(a, assignment) || reference_eval(b, assignment),
            Expr::Xor(a, b) => reference_eval(a, assignment) != reference_eval(b, assignment),
        }
    }

    pub(crate) fn arb_expr(max_var: usize, depth: u32) -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            any::<bool>().prop_map(Expr::Const),
            (1..=max_var).prop_map(Expr::Var),
        ];
        leaf.prop_recursive(depth, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Expr::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::xor(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_format(e in arb_expr(6, 8)) {
            prop_assert_eq!(parse(&e.to_string(), None).unwrap(), e.clone());
            prop_assert_eq!(parse(&e.to_compact_string(), None).unwrap(), e);
        }

        #[test]
        fn eval_matches_reference(e in arb_expr(6, 6)) {
            let n = 6;
            for k in 0..1usize << n {
                let x = decode(k, n).unwrap();
                prop_assert_eq!(e.eval(&x).unwrap(), reference_eval(&e, &x.to_bits()));
            }
        }

        #[test]
        fn operators_act_pointwise(a in arb_expr(4, 4), b in arb_expr(4, 4)) {
            for k in 0..16 {
                let x = decode(k, 4).unwrap();
                let (va, vb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
                prop_assert_eq!(Expr::xor(a.clone(), b.clone()).eval(&x).unwrap(), va ^ vb);
                prop_assert_eq!(Expr::and(a.clone(), b.clone()).eval(&x).unwrap(), va & vb);
                prop_assert_eq!(Expr::or(a.clone(), b.clone()).eval(&x).unwrap(), va | vb);
                prop_assert_eq!(Expr::not(a.clone()).eval(&x).unwrap(), !va);
            }
        }
    }
}
