//! Boolean functions as quantum gates.
//!
//! A reversible map on `n` bits becomes a `2^n × 2^n` permutation matrix and
//! back; a non-reversible `f` becomes the oracle `|x⟩|y⟩ ↦ |x⟩|y ⊕ f(x)⟩`.
//! Truth tables recovered from matrices are turned into sum-of-products
//! expressions by resolution. For any permutation gate `U` the crate builds
//! a skew-hermitian `K` with `U = e^K`, the Hamilton operator `H = iK`, and
//! its expansion in Kronecker products of Pauli matrices.
//!
//! ```
//! use boolgate::boolexpr::{parse, truth_table};
//! use boolgate::synth::{map_from_truth_table, matrix_from_map};
//!
//! let exprs = [parse("x1", Some(2)).unwrap(), parse("x1 ^ x2", Some(2)).unwrap()];
//! let cnot = map_from_truth_table(&truth_table(&exprs, 2).unwrap()).unwrap();
//! assert_eq!(matrix_from_map(&cnot).image(), &[0, 1, 3, 2]);
//! ```

pub mod bits;
pub mod boolexpr;
pub mod error;
pub mod ham;
pub mod linalg;
pub mod minimize;
pub mod pauli;
pub mod synth;

pub use bits::{decode, encode, BitVector, TruthTable};
pub use boolexpr::Expr;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, PermutationSpec};
pub use synth::ReversibleMap;
