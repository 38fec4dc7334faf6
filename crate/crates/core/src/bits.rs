//! Bit vectors, the index encoding and truth tables.
//!
//! A [`BitVector`] `(x1, ..., xn)` is identified with the integer
//! `x1·2^(n-1) + ... + xn·2^0`, so `x1` is always the most significant bit.
//! This is the row/column order of every matrix in the crate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported width. Indices must fit in a `u64` with room to spare.
pub const MAX_WIDTH: usize = 63;

/// An ordered tuple of `width` bits, `x1` leftmost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    width: usize,
    value: u64,
}

impl BitVector {
    /// Build from individual bits, `bits[0]` being `x1`.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        check_width(bits.len())?;
        let value = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Ok(Self {
            width: bits.len(),
            value,
        })
    }

    pub fn zeros(width: usize) -> Result<Self> {
        check_width(width)?;
        Ok(Self { width, value: 0 })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Bit `x_j` with 1-based `j`.
    pub fn get(&self, j: usize) -> Result<bool> {
        if j == 0 || j > self.width {
            return Err(Error::IndexOutOfRange {
                index: j,
                width: self.width,
            });
        }
        Ok(self.value >> (self.width - j) & 1 == 1)
    }

    /// Iterates `x1, x2, ..., xn`.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.width).map(move |j| self.value >> (self.width - j) & 1 == 1)
    }

    pub fn to_bits(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// Bits packed with `x1` as the most significant bit; equal to [`encode`].
    pub fn as_u64(&self) -> u64 {
        self.value
    }

    pub fn count_ones(&self) -> u32 {
        self.value.count_ones()
    }

    /// Appends `other` after the last bit of `self` (Kronecker order).
    pub fn concat(&self, other: &BitVector) -> Result<BitVector> {
        let width = self.width + other.width;
        check_width(width)?;
        Ok(BitVector {
            width,
            value: (self.value << other.width) | other.value,
        })
    }
}

fn check_width(width: usize) -> Result<()> {
    if width == 0 || width > MAX_WIDTH {
        Err(Error::InvalidWidth(width))
    } else {
        Ok(())
    }
}

/// `b(x) = Σ x_j 2^(n-j)`.
pub fn encode(x: &BitVector) -> usize {
    x.value as usize
}

/// Inverse of [`encode`] for a fixed width.
pub fn decode(k: usize, width: usize) -> Result<BitVector> {
    check_width(width)?;
    if (k as u128) >> width != 0 {
        return Err(Error::IndexOutOfRange { index: k, width });
    }
    Ok(BitVector {
        width,
        value: k as u64,
    })
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Syntax {
                    position: i,
                    message: format!("expected 0 or 1, found {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        BitVector::from_bits(&bits)
    }
}

/// A total map `{0,1}^n -> {0,1}^m`, row `k` holding `f(decode(k, n))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    inputs: usize,
    outputs: usize,
    rows: Vec<BitVector>,
}

impl TruthTable {
    pub fn new(inputs: usize, outputs: usize, rows: Vec<BitVector>) -> Result<Self> {
        check_width(inputs)?;
        check_width(outputs)?;
        if rows.len() != 1usize << inputs {
            return Err(Error::InvalidTable(format!(
                "{} rows given, a table on {} inputs needs {}",
                rows.len(),
                inputs,
                1usize << inputs
            )));
        }
        if let Some(bad) = rows.iter().find(|r| r.width() != outputs) {
            return Err(Error::WidthMismatch {
                expected: outputs,
                actual: bad.width(),
            });
        }
        Ok(Self {
            inputs,
            outputs,
            rows,
        })
    }

    /// Tabulates `f` over all inputs in increasing index order.
    pub fn from_fn<F>(inputs: usize, outputs: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&BitVector) -> Result<BitVector>,
    {
        check_width(inputs)?;
        let rows = (0..1usize << inputs)
            .map(|k| f(&decode(k, inputs)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(inputs, outputs, rows)
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn evaluate_row(&self, x: &BitVector) -> Result<BitVector> {
        if x.width() != self.inputs {
            return Err(Error::WidthMismatch {
                expected: self.inputs,
                actual: x.width(),
            });
        }
        Ok(self.rows[encode(x)])
    }

    /// Output bit `j` (0-based output index) for input index `k`.
    pub fn output_bit(&self, k: usize, j: usize) -> bool {
        self.rows[k].value >> (self.outputs - 1 - j) & 1 == 1
    }

    /// Parses the `<input bits> -> <output bits>` line format. Every input must
    /// appear exactly once; line order is free.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::InvalidTable(format!("line {}: missing '->'", lineno + 1)))?;
            let input: BitVector = lhs
                .trim()
                .parse()
                .map_err(|e| Error::InvalidTable(format!("line {}: {e}", lineno + 1)))?;
            let output: BitVector = rhs
                .trim()
                .parse()
                .map_err(|e| Error::InvalidTable(format!("line {}: {e}", lineno + 1)))?;
            entries.push((lineno + 1, input, output));
        }
        let Some(&(_, first_in, first_out)) = entries.first() else {
            return Err(Error::InvalidTable("no rows".into()));
        };
        let (n, m) = (first_in.width(), first_out.width());
        let mut rows: Vec<Option<BitVector>> = vec![None; 1usize << n];
        for (lineno, input, output) in entries {
            if input.width() != n || output.width() != m {
                return Err(Error::InvalidTable(format!(
                    "line {lineno}: expected {n} -> {m} bits"
                )));
            }
            let slot = &mut rows[encode(&input)];
            if slot.is_some() {
                return Err(Error::InvalidTable(format!(
                    "line {lineno}: input {input} listed twice"
                )));
            }
            *slot = Some(output);
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(k, r)| {
                r.ok_or_else(|| {
                    Error::InvalidTable(format!("input {} missing", decode(k, n).unwrap()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, m, rows)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            let x = decode(k, self.inputs).map_err(|_| fmt::Error)?;
            writeln!(f, "{x} -> {row}")?;
        }
        Ok(())
    }
}
