//! Hamilton operators of permutation gates.
//!
//! A permutation matrix `U` is unitary, so `U = e^K` for a skew-hermitian
//! `K`. Writing `K = -iĤt/ħ` identifies `Ĥ = ħω·H` with the dimensionless
//! hermitian `H = iK` at `ωt = 1`; any rescaling with the same product `ωt`
//! leaves `e^{-iĤt/ħ}` unchanged.
//!
//! `K` is built in closed form from the cycle structure: a cycle of length
//! `L` contributes the `L`-th roots of unity as eigenvalues, each with an
//! eigenvector supported on the cycle. Every eigenphase is taken on the
//! principal branch `(-π, π]`, so `-1` maps to `+π`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, PermutationSpec};
use crate::synth::ReversibleMap;

/// Disjoint cycles `(c0 c1 ... c_{L-1})` with `perm(c_i) = c_{i+1 mod L}`.
/// Each cycle starts at its smallest element; cycles are sorted by start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Principal eigenphases of the permutation matrix, cycle by cycle.
    pub fn eigenphases(&self) -> Vec<f64> {
        self.cycles
            .iter()
            .flat_map(|c| (0..c.len()).map(move |k| principal_phase(k, c.len())))
            .collect()
    }
}

/// Anything that acts as a permutation of `0..d`.
pub trait AsPermutation {
    fn images(&self) -> &[usize];
}

impl AsPermutation for PermutationSpec {
    fn images(&self) -> &[usize] {
        self.image()
    }
}

impl AsPermutation for ReversibleMap {
    fn images(&self) -> &[usize] {
        self.perm()
    }
}

pub fn cycles<P: AsPermutation + ?Sized>(p: &P) -> CycleDecomposition {
    let image = p.images();
    let mut visited = vec![false; image.len()];
    let mut cycles = Vec::new();
    for start in 0..image.len() {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut next = image[start];
        while next != start {
            visited[next] = true;
            cycle.push(next);
            next = image[next];
        }
        cycles.push(cycle);
    }
    CycleDecomposition { cycles }
}

/// Phase of `e^{2πik/L}` in `(-π, π]`.
fn principal_phase(k: usize, len: usize) -> f64 {
    if 2 * k < len {
        2.0 * PI * k as f64 / len as f64
    } else if 2 * k == len {
        PI
    } else {
        -2.0 * PI * (len - k) as f64 / len as f64
    }
}

/// The principal skew-hermitian logarithm of a permutation matrix.
pub fn skew_log(p: &PermutationSpec) -> ComplexMatrix {
    let d = p.size();
    let mut k = ComplexMatrix::zeros(d, d);
    for cycle in cycles(p).cycles {
        let len = cycle.len();
        if len == 1 {
            continue;
        }
        // K[c_a, c_b] depends only on (b - a) mod L:
        //   (i/L) Σ_k θ_k e^{2πik(b-a)/L}
        let roots: Vec<Complex64> = (0..len)
            .map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / len as f64))
            .collect();
        let phases: Vec<f64> = (0..len).map(|j| principal_phase(j, len)).collect();
        let by_offset: Vec<Complex64> = (0..len)
            .map(|delta| {
                let s: Complex64 = phases
                    .iter()
                    .enumerate()
                    .map(|(j, &theta)| roots[(j * delta) % len] * theta)
                    .sum();
                Complex64::i() * s / len as f64
            })
            .collect();
        for (a, &ca) in cycle.iter().enumerate() {
            for (b, &cb) in cycle.iter().enumerate() {
                k[(ca, cb)] = by_offset[(b + len - a) % len];
            }
        }
    }
    let k_adj = k.adjoint();
    k.sub(&k_adj)
        .expect("same shape")
        .scale(Complex64::new(0.5, 0.0))
}

/// `K`, the hermitian `H = iK` (in units of `ħω` with `ωt = 1`) and the
/// reconstruction residual `max |e^K - U|`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianResult {
    pub k: ComplexMatrix,
    pub h: ComplexMatrix,
    pub residual: f64,
}

impl Serialize for HamiltonianResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("HamiltonianResult", 4)?;
        s.serialize_field("K", &self.k)?;
        s.serialize_field("H", &self.h)?;
        s.serialize_field("residual", &self.residual)?;
        s.serialize_field("omega_t_convention", &1.0)?;
        s.end()
    }
}

pub fn hamiltonian(p: &PermutationSpec) -> HamiltonianResult {
    let k = skew_log(p);
    let h = k.scale(Complex64::i());
    let residual = matrix_exp(&k)
        .expect("square")
        .max_abs_diff(&p.to_dense())
        .expect("same shape");
    HamiltonianResult { k, h, residual }
}

/// Matrix exponential by scaling and squaring with a Taylor series.
///
/// The input is scaled by `2^-s` until its ∞-norm is at most 1/2, the series
/// is summed until terms stop contributing, and the result is squared `s`
/// times. For the generators produced by [`skew_log`] (norm at most π) the
/// error against the exact exponential stays below 1e-12 at `d <= 64`.
pub fn matrix_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let d = a.rows();
    let norm = a.norm_inf();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));

    let mut sum = ComplexMatrix::identity(d);
    let mut term = ComplexMatrix::identity(d);
    for j in 1..=40 {
        term = term
            .matmul(&scaled)?
            .scale(Complex64::new(1.0 / j as f64, 0.0));
        sum = sum.add(&term)?;
        if term.norm_inf() <= f64::EPSILON * sum.norm_inf() * 1e-2 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum)?;
    }
    Ok(sum)
}
