//! Dense complex matrices and compact permutation matrices.

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance when reading a dense matrix back as a permutation.
pub const PERMUTATION_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense matrix of `Complex64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixWire", into = "MatrixWire")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixWire> for ComplexMatrix {
    type Error = Error;

    fn try_from(w: MatrixWire) -> Result<Self> {
        let entries = w
            .entries
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_vec(w.rows, w.cols, entries)
    }
}

impl From<ComplexMatrix> for MatrixWire {
    fn from(m: ComplexMatrix) -> Self {
        MatrixWire {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl ComplexMatrix {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from nested real rows; convenient for fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)))
            .collect();
        Self::from_vec(rows.len(), cols, entries)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::from_vec(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.entries[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `(a⊗b)[i·p + k, j·q + l] = a[i,j]·b[k,l]` for `b` of shape `p×q`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (p, q) = (other.rows, other.cols);
        let mut out = ComplexMatrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out[(i * p + k, j * q + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal assembly in list order.
    pub fn direct_sum(blocks: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        if let Some(b) = blocks.iter().find(|b| !b.is_square()) {
            return Err(Error::NotSquare {
                rows: b.rows,
                cols: b.cols,
            });
        }
        let d: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = ComplexMatrix::zeros(d, d);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(offset + i, offset + j)] = b[(i, j)];
                }
            }
            offset += b.rows;
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        self.map(|z| z * factor)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| f(z)).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<ComplexMatrix> {
        self.check_same_shape(other)?;
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_distance(&self, other: &ComplexMatrix) -> Result<f64> {
        Ok(self.sub(other)?.frobenius_norm())
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn check_same_shape(&self, other: &ComplexMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Bracketed rows, one per line, e.g. `[1 0 0 0]`.
    ///
    /// Integer-valued real matrices print as integers. Matrices whose entries
    /// are all Gaussian-integer multiples of π/4 (within 1e-12) print as a
    /// `pi/4 *` header followed by the integer multiples; anything else prints
    /// fixed-point decimals.
    pub fn render_text(&self) -> String {
        let cells: Vec<String>;
        let mut out = String::new();
        if let Some(ints) = self.gaussian_multiples(1.0) {
            cells = ints
                .iter()
                .map(|&(a, b)| gaussian_to_string(a, b))
                .collect();
        } else if let Some(ints) = self.gaussian_multiples(FRAC_PI_4) {
            out.push_str("pi/4 *\n");
            cells = ints
                .iter()
                .map(|&(a, b)| gaussian_to_string(a, b))
                .collect();
        } else {
            cells = self.entries.iter().map(|z| decimal_to_string(*z)).collect();
        }
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            out.push('[');
            for j in 0..self.cols {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{:>width$}", cells[i * self.cols + j]);
            }
            out.push_str("]\n");
        }
        out
    }

    /// Same operator with the qubit order reversed: row and column indices
    /// are bit-reversed. The matrix must be square with power-of-two size.
    pub fn reverse_bit_order(&self) -> Result<ComplexMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = log2_exact(self.rows)?;
        let mut out = ComplexMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(reverse_bits(i, n), reverse_bits(j, n))] = self[(i, j)];
            }
        }
        Ok(out)
    }

    fn gaussian_multiples(&self, unit: f64) -> Option<Vec<(i64, i64)>> {
        const TOL: f64 = 1e-12;
        let snap = |v: f64| {
            let r = (v / unit).round();
            ((v - r * unit).abs() <= TOL && r.abs() < 1e9).then_some(r as i64)
        };
        self.entries
            .iter()
            .map(|z| Some((snap(z.re)?, snap(z.im)?)))
            .collect()
    }
}

fn gaussian_to_string(re: i64, im: i64) -> String {
    let imag = |b: i64| match b {
        1 => "i".to_string(),
        -1 => "-i".to_string(),
        _ => format!("{b}i"),
    };
    match (re, im) {
        (a, 0) => a.to_string(),
        (0, b) => imag(b),
        (a, b) if b > 0 => format!("{a}+{}", imag(b)),
        (a, b) => format!("{a}{}", imag(b)),
    }
}

fn decimal_to_string(z: Complex64) -> String {
    let clean = |v: f64| if v.abs() < 5e-7 { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else if im < 0.0 {
        format!("{re:.6}-{:.6}i", -im)
    } else {
        format!("{re:.6}+{im:.6}i")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// A permutation matrix stored as the row of the 1 in each column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PermutationWire")]
pub struct PermutationSpec {
    size: usize,
    image: Vec<usize>,
}

#[derive(Deserialize)]
struct PermutationWire {
    size: usize,
    image: Vec<usize>,
}

impl TryFrom<PermutationWire> for PermutationSpec {
    type Error = Error;

    fn try_from(w: PermutationWire) -> Result<Self> {
        if w.size != w.image.len() {
            return Err(Error::InvalidImage(format!(
                "size {} but {} image entries",
                w.size,
                w.image.len()
            )));
        }
        PermutationSpec::new(w.image)
    }
}

impl PermutationSpec {
    /// `image[c] = r` puts the 1 of column `c` in row `r`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let d = image.len();
        let mut seen = vec![None; d];
        for (c, &r) in image.iter().enumerate() {
            if r >= d {
                return Err(Error::InvalidImage(format!(
                    "column {c} maps to row {r}, outside 0..{d}"
                )));
            }
            if let Some(prev) = seen[r] {
                return Err(Error::InvalidImage(format!(
                    "columns {prev} and {c} both map to row {r}"
                )));
            }
            seen[r] = Some(c);
        }
        Ok(Self { size: d, image })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            size: d,
            image: (0..d).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.size, self.size);
        for (c, &r) in self.image.iter().enumerate() {
            m[(r, c)] = ONE;
        }
        m
    }

    /// Reads a dense permutation matrix; every entry must lie within `tol`
    /// of 0 or 1 with exactly one 1 per column and per row.
    pub fn from_dense(m: &ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        let d = m.rows;
        let mut image = Vec::with_capacity(d);
        let mut used_by: Vec<Option<usize>> = vec![None; d];
        for c in 0..d {
            let mut one_at = None;
            for r in 0..d {
                let z = m[(r, c)];
                if (z - ONE).norm() <= tol {
                    if let Some(prev) = one_at {
                        return Err(Error::NotPermutation {
                            column: c,
                            reason: format!("entries in rows {prev} and {r} are both 1"),
                        });
                    }
                    one_at = Some(r);
                } else if z.norm() > tol {
                    return Err(Error::NotPermutation {
                        column: c,
                        reason: format!("entry in row {r} is {z}, neither 0 nor 1"),
                    });
                }
            }
            let r = one_at.ok_or_else(|| Error::NotPermutation {
                column: c,
                reason: "no entry equal to 1".into(),
            })?;
            if let Some(prev) = used_by[r] {
                return Err(Error::NotPermutation {
                    column: c,
                    reason: format!("row {r} already holds the 1 of column {prev}"),
                });
            }
            used_by[r] = Some(c);
            image.push(r);
        }
        Ok(Self { size: d, image })
    }

    /// Conjugates by the bit-reversal of indices, i.e. the same gate with the
    /// qubit order reversed. `size` must be a power of two.
    pub fn reverse_bit_order(&self) -> Result<PermutationSpec> {
        let n = log2_exact(self.size)?;
        let rev = |k: usize| reverse_bits(k, n);
        let mut image = vec![0; self.size];
        for (c, &r) in self.image.iter().enumerate() {
            image[rev(c)] = rev(r);
        }
        Ok(PermutationSpec {
            size: self.size,
            image,
        })
    }
}

pub(crate) fn reverse_bits(k: usize, n: usize) -> usize {
    (0..n).fold(0, |acc, i| acc | ((k >> i) & 1) << (n - 1 - i))
}

/// `log2(d)` when `d` is a power of two.
pub fn log2_exact(d: usize) -> Result<usize> {
    if d.is_power_of_two() {
        Ok(d.trailing_zeros() as usize)
    } else {
        Err(Error::NotPowerOfTwo(d))
    }
}

/// The Walsh-Hadamard matrix `(1/√2)[[1, 1], [1, -1]]`.
pub fn hadamard() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]).expect("2x2")
}

/// Pauli X, `[[0, 1], [1, 0]]`.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2")
}
