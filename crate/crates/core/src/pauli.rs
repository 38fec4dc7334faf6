//! Expansion of `2^n × 2^n` matrices in Kronecker products of Pauli matrices.
//!
//! The `4^n` words `σ_{w1} ⊗ ... ⊗ σ_{wn}` are trace-orthogonal with
//! `Tr(P_a P_b) = 2^n [a = b]`, so the coefficient of word `w` in `m` is
//! `Tr(m · P_w) / 2^n`.

use std::fmt::{self, Write as _};

use num_complex::Complex64;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{log2_exact, ComplexMatrix};

/// Coefficients at or below this magnitude are dropped.
pub const DROP_TOL: f64 = 1e-12;

/// `σ_0 = I`, `σ_1`, `σ_2`, `σ_3`.
pub fn sigma(i: u8) -> Result<ComplexMatrix> {
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let j = Complex64::i();
    let rows = match i {
        0 => [[o, z], [z, o]],
        1 => [[z, o], [o, z]],
        2 => [[z, -j], [j, z]],
        3 => [[o, z], [z, -o]],
        _ => return Err(Error::InvalidWord(format!("sigma index {i} not in 0..=3"))),
    };
    ComplexMatrix::from_vec(2, 2, rows.concat())
}

/// `σ_{w1} ⊗ σ_{w2} ⊗ ... ⊗ σ_{wn}`, left to right.
pub fn pauli_word_matrix(word: &[u8]) -> Result<ComplexMatrix> {
    let (first, rest) = word
        .split_first()
        .ok_or_else(|| Error::InvalidWord("empty word".into()))?;
    rest.iter()
        .try_fold(sigma(*first)?, |acc, &w| Ok(acc.kron(&sigma(w)?)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Products of `σ_i`.
    Sigma,
    /// Products of spin matrices `S_i = σ_i / 2` (with `S_0 = I`).
    Spin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub word: Vec<u8>,
    pub coeff: Complex64,
}

/// A linear combination of Pauli (or spin) words, sorted lexicographically
/// by word.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    pub n: usize,
    pub basis: Basis,
    pub terms: Vec<PauliTerm>,
}

/// Coefficient of word `w` in `m` without materializing `P_w`.
///
/// `P_w` has a single nonzero per column: column `c` holds its entry in row
/// `c ^ flip`, where `flip` marks the factors equal to σ1 or σ2. Hence
/// `Tr(m P_w) = Σ_c m[c ^ flip, c] · P_w[c, c ^ flip]`.
fn word_coefficient(m: &ComplexMatrix, word: &[u8]) -> Complex64 {
    let n = word.len();
    let flip = word
        .iter()
        .fold(0usize, |acc, &w| (acc << 1) | usize::from(w == 1 || w == 2));
    let d = 1usize << n;
    let mut total = Complex64::new(0.0, 0.0);
    for c in 0..d {
        let mut phase = Complex64::new(1.0, 0.0);
        for (pos, &w) in word.iter().enumerate() {
            let bit = c >> (n - 1 - pos) & 1;
            match (w, bit) {
                (2, 0) => phase *= -Complex64::i(),
                (2, _) => phase *= Complex64::i(),
                (3, 1) => phase = -phase,
                _ => {}
            }
        }
        total += m[(c ^ flip, c)] * phase;
    }
    total / d as f64
}

fn words(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1usize << (2 * n)).map(move |code| {
        (0..n)
            .map(|pos| (code >> (2 * (n - 1 - pos)) & 3) as u8)
            .collect()
    })
}

/// Expansion of `m` in the σ basis; terms with `|coeff| <= DROP_TOL` omitted.
pub fn decompose(m: &ComplexMatrix) -> Result<PauliSum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = log2_exact(m.rows())?;
    if n == 0 {
        return Err(Error::NotPowerOfTwo(1));
    }
    let terms = words(n)
        .filter_map(|word| {
            let coeff = word_coefficient(m, &word);
            (coeff.norm() > DROP_TOL).then_some(PauliTerm { word, coeff })
        })
        .collect();
    Ok(PauliSum {
        n,
        basis: Basis::Sigma,
        terms,
    })
}

/// `Σ coeff · P_word` over σ-basis terms.
pub fn reconstruct(terms: &[PauliTerm], n: usize) -> Result<ComplexMatrix> {
    let d = 1usize << n;
    let mut out = ComplexMatrix::zeros(d, d);
    for t in terms {
        if t.word.len() != n {
            return Err(Error::InvalidWord(format!(
                "word of length {} in a sum over {n} factors",
                t.word.len()
            )));
        }
        out = out.add(&pauli_word_matrix(&t.word)?.scale(t.coeff))?;
    }
    Ok(out)
}

/// Rewrites σ-basis coefficients for the spin basis: each non-identity factor
/// contributes `σ_i = 2 S_i`.
pub fn spin_form(sum: &PauliSum) -> PauliSum {
    let factor = |word: &[u8]| match sum.basis {
        Basis::Sigma => 2f64.powi(word.iter().filter(|&&w| w != 0).count() as i32),
        Basis::Spin => 1.0,
    };
    PauliSum {
        n: sum.n,
        basis: Basis::Spin,
        terms: sum
            .terms
            .iter()
            .map(|t| PauliTerm {
                word: t.word.clone(),
                coeff: t.coeff * factor(&t.word),
            })
            .collect(),
    }
}

impl PauliSum {
    /// Dense matrix of the sum in either basis.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        match self.basis {
            Basis::Sigma => reconstruct(&self.terms, self.n),
            Basis::Spin => {
                let sigma_terms: Vec<_> = self
                    .terms
                    .iter()
                    .map(|t| PauliTerm {
                        word: t.word.clone(),
                        coeff: t.coeff
                            / 2f64.powi(t.word.iter().filter(|&&w| w != 0).count() as i32),
                    })
                    .collect();
                reconstruct(&sigma_terms, self.n)
            }
        }
    }

    /// Every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> PauliSum {
        PauliSum {
            n: self.n,
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm {
                    word: t.word.clone(),
                    coeff: t.coeff * factor,
                })
                .collect(),
        }
    }

    /// Coefficient of `word`, zero when absent.
    pub fn coeff(&self, word: &[u8]) -> Complex64 {
        self.terms
            .iter()
            .find(|t| t.word == word)
            .map_or(Complex64::new(0.0, 0.0), |t| t.coeff)
    }
}

fn format_real(v: f64) -> String {
    let r = v.round();
    if (v - r).abs() <= DROP_TOL {
        return format!("{}", r.abs() as i64);
    }
    let s = format!("{:.12}", v.abs());
    s.trim_end_matches('0').to_string()
}

/// One term per line: `<sign><coeff> * s<w1> (x) s<w2> ...`. Spin-basis
/// factors print as `S<i>`. Complex coefficients print as `(re+imi)`.
impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.basis {
            Basis::Sigma => 's',
            Basis::Spin => 'S',
        };
        for t in &self.terms {
            let mut line = String::new();
            if t.coeff.im.abs() <= DROP_TOL {
                line.push(if t.coeff.re < 0.0 { '-' } else { '+' });
                line.push_str(&format_real(t.coeff.re));
            } else {
                let sign = |v: f64| if v < 0.0 { '-' } else { '+' };
                let _ = write!(
                    line,
                    "+({}{}{}{}i)",
                    if t.coeff.re < 0.0 { "-" } else { "" },
                    format_real(t.coeff.re),
                    sign(t.coeff.im),
                    format_real(t.coeff.im)
                );
            }
            line.push_str(" * ");
            let factors: Vec<String> = t.word.iter().map(|w| format!("{letter}{w}")).collect();
            line.push_str(&factors.join(" (x) "));
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

struct TermWire<'a>(&'a PauliTerm);

impl Serialize for TermWire<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(3))?;
        m.serialize_entry("word", &self.0.word)?;
        m.serialize_entry("re", &self.0.coeff.re)?;
        m.serialize_entry("im", &self.0.coeff.im)?;
        m.end()
    }
}

impl Serialize for PauliSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PauliSum", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field(
            "basis",
            match self.basis {
                Basis::Sigma => "sigma",
                Basis::Spin => "spin",
            },
        )?;
        let terms: Vec<_> = self.terms.iter().map(TermWire).collect();
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}
