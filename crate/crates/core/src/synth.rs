//! Reversible maps, their permutation matrices, and oracles for
//! non-reversible functions.
//!
//! Matrix convention: the gate of a map `f` has its 1 in row `b(f(x))`,
//! column `b(x)`, so that `U|x⟩ = |f(x)⟩`.

use crate::bits::{decode, encode, BitVector, TruthTable};
use crate::error::{Error, Result};
use crate::linalg::{hadamard, log2_exact, ComplexMatrix, PermutationSpec};

/// A bijection on `{0, ..., 2^n - 1}`, `perm[b(x)] = b(f(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReversibleMap {
    n: usize,
    perm: Vec<usize>,
}

impl ReversibleMap {
    pub fn new(n: usize, perm: Vec<usize>) -> Result<Self> {
        if n == 0 || n > crate::bits::MAX_WIDTH {
            return Err(Error::InvalidWidth(n));
        }
        if perm.len() != 1usize << n {
            return Err(Error::WidthMismatch {
                expected: 1usize << n,
                actual: perm.len(),
            });
        }
        let mut seen = vec![None; perm.len()];
        for (k, &v) in perm.iter().enumerate() {
            if v >= perm.len() {
                return Err(Error::InvalidImage(format!("{k} maps to {v}")));
            }
            if let Some(prev) = seen[v] {
                return Err(not_reversible(n, prev, k, v));
            }
            seen[v] = Some(k);
        }
        Ok(Self { n, perm })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, (0..1usize << n).collect())
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, x: &BitVector) -> Result<BitVector> {
        if x.width() != self.n {
            return Err(Error::WidthMismatch {
                expected: self.n,
                actual: x.width(),
            });
        }
        decode(self.perm[encode(x)], self.n)
    }

    pub fn to_truth_table(&self) -> TruthTable {
        TruthTable::from_fn(self.n, self.n, |x| self.apply(x)).expect("valid width")
    }

    /// `b` applied after `self`.
    pub fn then(&self, b: &ReversibleMap) -> Result<ReversibleMap> {
        compose(self, b)
    }
}

fn not_reversible(n: usize, first: usize, second: usize, output: usize) -> Error {
    let show = |k| decode(k, n).map(|b| b.to_string()).unwrap_or_default();
    Error::NotReversible {
        first: show(first),
        second: show(second),
        output: show(output),
    }
}

pub fn map_from_truth_table(tt: &TruthTable) -> Result<ReversibleMap> {
    if tt.inputs() != tt.outputs() {
        return Err(Error::WidthMismatch {
            expected: tt.inputs(),
            actual: tt.outputs(),
        });
    }
    ReversibleMap::new(tt.inputs(), tt.rows().iter().map(encode).collect())
}

pub fn matrix_from_map(m: &ReversibleMap) -> PermutationSpec {
    PermutationSpec::new(m.perm.clone()).expect("bijection")
}

/// Reads the map column by column: column `b(x)` has its 1 in row `b(f(x))`.
pub fn map_from_matrix(p: &PermutationSpec) -> Result<ReversibleMap> {
    let n = log2_exact(p.size())?;
    if n == 0 {
        return Err(Error::InvalidWidth(0));
    }
    ReversibleMap::new(n, p.image().to_vec())
}

/// The oracle `(x, y) ↦ (x, y ⊕ f(x))` on `n + 1` bits, `y` last (least
/// significant).
pub fn oracle_matrix(tt: &TruthTable) -> Result<PermutationSpec> {
    if tt.outputs() != 1 {
        return Err(Error::WidthMismatch {
            expected: 1,
            actual: tt.outputs(),
        });
    }
    let image = (0..1usize << (tt.inputs() + 1))
        .map(|state| {
            let (x, y) = (state >> 1, state & 1);
            (x << 1) | (y ^ usize::from(tt.output_bit(x, 0)))
        })
        .collect();
    PermutationSpec::new(image)
}

/// `k`-fold Kronecker power of the Walsh-Hadamard matrix.
pub fn hadamard_power(k: usize) -> ComplexMatrix {
    let h = hadamard();
    (1..k).fold(
        if k == 0 {
            ComplexMatrix::identity(1)
        } else {
            h.clone()
        },
        |acc, _| acc.kron(&h),
    )
}

/// `W·U·W` with `W = U_H ⊗ ... ⊗ U_H`: the gate expressed in the Hadamard basis.
pub fn hadamard_conjugate(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let w = hadamard_power(log2_exact(u.rows())?);
    w.matmul(u)?.matmul(&w)
}

/// `b ∘ a`: applies `a` first, then `b`.
pub fn compose(a: &ReversibleMap, b: &ReversibleMap) -> Result<ReversibleMap> {
    if a.n != b.n {
        return Err(Error::WidthMismatch {
            expected: a.n,
            actual: b.n,
        });
    }
    Ok(ReversibleMap {
        n: a.n,
        perm: a.perm.iter().map(|&k| b.perm[k]).collect(),
    })
}

pub fn invert(a: &ReversibleMap) -> ReversibleMap {
    let mut perm = vec![0; a.perm.len()];
    for (k, &v) in a.perm.iter().enumerate() {
        perm[v] = k;
    }
    ReversibleMap { n: a.n, perm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolexpr::{parse, truth_table};
    use crate::linalg::{pauli_x, PERMUTATION_TOL};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn table(exprs: &str, n: usize) -> TruthTable {
        let exprs: Vec<_> = exprs
            .split(';')
            .map(|e| parse(e, Some(n)).unwrap())
            .collect();
        truth_table(&exprs, n).unwrap()
    }

    fn id(d: usize) -> ComplexMatrix {
        ComplexMatrix::identity(d)
    }

    fn dense(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn map_from_truth_table_examples() {
        let cnot = map_from_truth_table(&table("x1;x1^x2", 2)).unwrap();
        assert_eq!(cnot.perm(), &[0, 1, 3, 2]);
        let p = map_from_truth_table(&table("x1^1;x1^x2", 2)).unwrap();
        assert_eq!(p.perm(), &[2, 3, 1, 0]);
        let err = map_from_truth_table(&table("!x1;!x1", 2)).unwrap_err();
        assert_eq!(
            err,
            Error::NotReversible {
                first: "00".into(),
                second: "01".into(),
                output: "11".into()
            }
        );
        assert!(map_from_truth_table(&table("x1", 2)).is_err());
    }

    #[test]
    fn matrix_from_map_examples() {
        let cnot = ReversibleMap::new(2, vec![0, 1, 3, 2]).unwrap();
        assert_eq!(
            matrix_from_map(&cnot).to_dense(),
            ComplexMatrix::direct_sum(&[id(2), pauli_x()]).unwrap()
        );
        let p = ReversibleMap::new(2, vec![2, 3, 1, 0]).unwrap();
        assert_eq!(
            matrix_from_map(&p).to_dense(),
            dense(&[
                &[0., 0., 0., 1.],
                &[0., 0., 1., 0.],
                &[1., 0., 0., 0.],
                &[0., 1., 0., 0.],
            ])
        );
    }

    #[test]
    fn three_bit_gate_matrix() {
        let gate = map_from_truth_table(&table(
            "x1 ^ x3; x1 ^ x2; (x1 & x2) ^ (x1 & x3) ^ (x2 & x3)",
            3,
        ))
        .unwrap();
        let printed = dense(&[
            &[1., 0., 0., 0., 0., 0., 0., 0.],
            &[0., 0., 0., 0., 1., 0., 0., 0.],
            &[0., 0., 1., 0., 0., 0., 0., 0.],
            &[0., 1., 0., 0., 0., 0., 0., 0.],
            &[0., 0., 0., 0., 0., 0., 0., 1.],
            &[0., 0., 0., 1., 0., 0., 0., 0.],
            &[0., 0., 0., 0., 0., 1., 0., 0.],
            &[0., 0., 0., 0., 0., 0., 1., 0.],
        ]);
        // The printed matrix lists basis states with x1 least significant.
        let synthesized = matrix_from_map(&gate);
        assert_eq!(synthesized.image(), &[0, 4, 2, 7, 6, 3, 5, 1]);
        assert_eq!(synthesized.reverse_bit_order().unwrap().to_dense(), printed);

        let inverse_formulas = table(
            "x1 & x2 & !x3 | !x1 & x3 | !x2 & x3; \
             !x1 & x2 & !x3 | x1 & x3 | !x2 & x3; \
             x1 & !x2 & !x3 | !x1 & x3 | x2 & x3",
            3,
        );
        assert_eq!(invert(&gate).to_truth_table(), inverse_formulas);
    }

    #[test]
    fn map_from_matrix_examples() {
        let u = dense(&[
            &[0., 1., 0., 0.],
            &[0., 0., 0., 1.],
            &[1., 0., 0., 0.],
            &[0., 0., 1., 0.],
        ]);
        let spec = PermutationSpec::from_dense(&u, PERMUTATION_TOL).unwrap();
        let map = map_from_matrix(&spec).unwrap();
        assert_eq!(map.to_truth_table(), table("!x2;x1", 2));
        assert_eq!(
            map.to_truth_table().to_string(),
            "00 -> 10\n01 -> 00\n10 -> 11\n11 -> 01\n"
        );

        assert_eq!(
            map_from_matrix(&PermutationSpec::identity(8)).unwrap(),
            ReversibleMap::identity(3).unwrap()
        );
        assert_eq!(
            map_from_matrix(&PermutationSpec::identity(6)),
            Err(Error::NotPowerOfTwo(6))
        );
        assert!(map_from_matrix(&PermutationSpec::identity(1)).is_err());
    }

    #[test]
    fn oracle_matrix_from_dense_block_sum() {
        let uf = ComplexMatrix::direct_sum(&[id(4), pauli_x(), id(2)]).unwrap();
        let spec = PermutationSpec::from_dense(&uf, PERMUTATION_TOL).unwrap();
        let map = map_from_matrix(&spec).unwrap();
        let text = map.to_truth_table().to_string();
        assert!(text.contains("100 -> 101\n101 -> 100\n"));
    }

    #[test]
    fn oracle_examples() {
        let and_not = oracle_matrix(&table("x1 & !x2", 2)).unwrap();
        assert_eq!(
            and_not.to_dense(),
            ComplexMatrix::direct_sum(&[id(4), pauli_x(), id(2)]).unwrap()
        );
        let xor = oracle_matrix(&table("x1 ^ x2", 2)).unwrap();
        assert_eq!(
            xor.to_dense(),
            ComplexMatrix::direct_sum(&[id(2), pauli_x(), pauli_x(), id(2)]).unwrap()
        );
        let majority = oracle_matrix(&table("(x1 & x2) | (x1 & x3) | (x2 & x3)", 3)).unwrap();
        assert_eq!(
            majority.to_dense(),
            ComplexMatrix::direct_sum(&[id(6), pauli_x(), id(2), id(3).kron(&pauli_x())]).unwrap()
        );
        assert!(oracle_matrix(&table("x1;x2", 2)).is_err());
    }

    #[test]
    fn hadamard_conjugate_examples() {
        let i = id(8);
        assert!(hadamard_conjugate(&i).unwrap().max_abs_diff(&i).unwrap() < 1e-12);

        let cnot = PermutationSpec::new(vec![0, 1, 3, 2]).unwrap().to_dense();
        let twice = hadamard_conjugate(&hadamard_conjugate(&cnot).unwrap()).unwrap();
        assert!(twice.max_abs_diff(&cnot).unwrap() < 1e-12);

        // brute-force W·U·W with explicit sums
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let w1 = [[h, h], [h, -h]];
        let w = |r: usize, c: usize| w1[r >> 1][c >> 1] * w1[r & 1][c & 1];
        let mut expect = ComplexMatrix::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                let mut s = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        s += w(r, a) * cnot[(a, b)].re * w(b, c);
                    }
                }
                expect[(r, c)] = Complex64::new(s, 0.0);
            }
        }
        let flipped = PermutationSpec::new(vec![0, 3, 2, 1]).unwrap().to_dense();
        assert!(expect.max_abs_diff(&flipped).unwrap() < 1e-12);
        assert!(
            hadamard_conjugate(&cnot)
                .unwrap()
                .max_abs_diff(&flipped)
                .unwrap()
                < 1e-12
        );

        assert!(hadamard_conjugate(&id(3)).is_err());
        assert!(hadamard_conjugate(&ComplexMatrix::zeros(2, 4)).is_err());
    }

    #[test]
    fn compose_and_invert_examples() {
        let cnot = ReversibleMap::new(2, vec![0, 1, 3, 2]).unwrap();
        assert_eq!(invert(&cnot), cnot);
        let p = ReversibleMap::new(2, vec![2, 3, 1, 0]).unwrap();
        assert_eq!(
            compose(&p, &invert(&p)).unwrap(),
            ReversibleMap::identity(2).unwrap()
        );
        // cnot then p
        assert_eq!(compose(&cnot, &p).unwrap().perm(), &[2, 3, 0, 1]);
        assert!(compose(&cnot, &ReversibleMap::identity(3).unwrap()).is_err());
    }

    fn arb_map(max_n: usize) -> impl Strategy<Value = ReversibleMap> {
        (1..=max_n)
            .prop_flat_map(|n| {
                Just((0..1usize << n).collect::<Vec<_>>())
                    .prop_shuffle()
                    .prop_map(move |p| (n, p))
            })
            .prop_map(|(n, p)| ReversibleMap::new(n, p).unwrap())
    }

    fn arb_table(max_n: usize) -> impl Strategy<Value = TruthTable> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), 1usize << n).prop_map(move |bits| {
                TruthTable::new(
                    n,
                    1,
                    bits.iter()
                        .map(|&b| BitVector::from_bits(&[b]).unwrap())
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn map_matrix_roundtrip(m in arb_map(4)) {
            prop_assert_eq!(map_from_matrix(&matrix_from_map(&m)).unwrap(), m);
        }

        #[test]
        fn permutation_matrices_are_unitary(m in arb_map(4)) {
            let u = matrix_from_map(&m).to_dense();
            let d = u.rows();
            prop_assert_eq!(u.matmul(&u.adjoint()).unwrap(), id(d));
            let ones = vec![Complex64::new(1.0, 0.0); d];
            prop_assert_eq!(u.apply(&ones).unwrap(), ones);
        }

        #[test]
        fn oracle_is_an_involution_that_keeps_the_input(tt in arb_table(4)) {
            let spec = oracle_matrix(&tt).unwrap();
            let u = spec.to_dense();
            prop_assert_eq!(u.matmul(&u).unwrap(), id(u.rows()));
            for (state, &image) in spec.image().iter().enumerate() {
                prop_assert_eq!(state >> 1, image >> 1);
            }
        }

        #[test]
        fn hadamard_conjugate_preserves_frobenius_norm(m in arb_map(3)) {
            let u = matrix_from_map(&m).to_dense();
            let zero = ComplexMatrix::zeros(u.rows(), u.cols());
            let conj = hadamard_conjugate(&u).unwrap();
            let lhs = conj.frobenius_distance(&zero).unwrap();
            let rhs = u.frobenius_distance(&zero).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
