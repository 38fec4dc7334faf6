//! Sum-of-products extraction and simplification by resolution.
//!
//! A product term is a [`Cube`]: a polarity per variable plus a mask of
//! eliminated variables. [`simplify_resolution`] repeatedly merges pairs of
//! cubes with equal masks that disagree in exactly one unmasked position
//! (`a·x + a·!x = a`) until nothing merges. The result is the set of
//! implicants that survive this process; no covering step selects a
//! minimal subset, so the sum may contain redundant terms.

use std::collections::HashSet;

use crate::bits::{decode, BitVector, TruthTable};
use crate::boolexpr::{agrees_with, Expr};
use crate::error::{Error, Result};

/// A product term over `n` variables. Bit `n - j` of `bits`/`mask` belongs to
/// `x_j`; masked positions of `bits` are always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    n: usize,
    bits: u64,
    mask: u64,
}

impl Cube {
    pub fn new(bits: BitVector, mask: BitVector) -> Result<Self> {
        if bits.width() != mask.width() {
            return Err(Error::WidthMismatch {
                expected: bits.width(),
                actual: mask.width(),
            });
        }
        Ok(Self::from_raw(bits.width(), bits.as_u64(), mask.as_u64()))
    }

    /// A cube with no eliminated variables.
    pub fn minterm(x: BitVector) -> Self {
        Self::from_raw(x.width(), x.as_u64(), 0)
    }

    fn from_raw(n: usize, bits: u64, mask: u64) -> Self {
        Self {
            n,
            bits: bits & !mask,
            mask,
        }
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> BitVector {
        decode(self.bits as usize, self.n).expect("width checked on construction")
    }

    pub fn mask(&self) -> BitVector {
        decode(self.mask as usize, self.n).expect("width checked on construction")
    }

    /// Number of literals in the product.
    pub fn literal_count(&self) -> u32 {
        self.n as u32 - self.mask.count_ones()
    }

    pub fn covers(&self, x: &BitVector) -> bool {
        x.width() == self.n && (x.as_u64() ^ self.bits) & !self.mask == 0
    }

    /// The resolvent of two cubes, if they share a mask and differ in exactly
    /// one unmasked position.
    pub fn resolve(&self, other: &Cube) -> Option<Cube> {
        if self.n != other.n || self.mask != other.mask {
            return None;
        }
        let diff = (self.bits ^ other.bits) & !self.mask;
        (diff.count_ones() == 1).then(|| Cube::from_raw(self.n, self.bits, self.mask | diff))
    }

    /// Product of literals, `x_j` or `!x_j` for each unmasked position.
    pub fn to_expr(&self) -> Expr {
        (1..=self.n)
            .filter(|j| self.mask >> (self.n - j) & 1 == 0)
            .map(|j| {
                if self.bits >> (self.n - j) & 1 == 1 {
                    Expr::var(j)
                } else {
                    Expr::not(Expr::var(j))
                }
            })
            .reduce(Expr::and)
            .unwrap_or(Expr::Const(true))
    }
}

/// A sum of cubes over `n` variables, in emission order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeList {
    n: usize,
    cubes: Vec<Cube>,
}

impl CubeList {
    pub fn new(n: usize, cubes: Vec<Cube>) -> Result<Self> {
        if let Some(c) = cubes.iter().find(|c| c.n != n) {
            return Err(Error::WidthMismatch {
                expected: n,
                actual: c.n,
            });
        }
        Ok(Self { n, cubes })
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn covers(&self, x: &BitVector) -> bool {
        self.cubes.iter().any(|c| c.covers(x))
    }

    /// Input indices covered by at least one cube.
    pub fn covered_set(&self) -> Vec<usize> {
        (0..1usize << self.n)
            .filter(|&k| self.covers(&decode(k, self.n).expect("width")))
            .collect()
    }
}

/// One full cube per input whose output bit `j` is set, in increasing index
/// order.
pub fn minterms(tt: &TruthTable, j: usize) -> Result<CubeList> {
    if j >= tt.outputs() {
        return Err(Error::IndexOutOfRange {
            index: j,
            width: tt.outputs(),
        });
    }
    let n = tt.inputs();
    let cubes = (0..1usize << n)
        .filter(|&k| tt.output_bit(k, j))
        .map(|k| Cube::minterm(decode(k, n).expect("width")))
        .collect();
    CubeList::new(n, cubes)
}

fn dedup_in_order(cubes: Vec<Cube>) -> Vec<Cube> {
    let mut seen = HashSet::with_capacity(cubes.len());
    cubes.into_iter().filter(|c| seen.insert(*c)).collect()
}

/// Round-based resolution to a fixpoint.
///
/// Each round scans pairs `(i, k)` with `i <= k`; every resolving pair emits
/// its resolvent into the next round and marks both partners as used. Cubes
/// left unused at the end of their round are final. Output keeps first
/// occurrences in emission order.
pub fn simplify_resolution(list: &CubeList) -> CubeList {
    let mut result = Vec::new();
    let mut current = dedup_in_order(list.cubes.clone());
    while !current.is_empty() {
        let mut next = Vec::new();
        let mut copy = vec![true; current.len()];
        for i in 0..current.len() {
            for k in i..current.len() {
                if let Some(merged) = current[i].resolve(&current[k]) {
                    next.push(merged);
                    copy[i] = false;
                    copy[k] = false;
                }
            }
            if copy[i] {
                result.push(current[i]);
            }
        }
        current = dedup_in_order(next);
    }
    CubeList {
        n: list.n,
        cubes: dedup_in_order(result),
    }
}

/// OR of the cube products, folded left; `0` for an empty list.
pub fn expr_from_cubes(list: &CubeList) -> Expr {
    list.cubes
        .iter()
        .map(Cube::to_expr)
        .reduce(Expr::or)
        .unwrap_or(Expr::Const(false))
}

/// True iff `e` reproduces output `j` of `tt` on every input.
pub fn equivalent(e: &Expr, tt: &TruthTable, j: usize) -> bool {
    j < tt.outputs() && e.arity() <= tt.inputs() && agrees_with(e, tt, j).unwrap_or(false)
}

/// Simplified sum-of-products expression for every output of `tt`.
pub fn sop_expressions(tt: &TruthTable) -> Vec<Expr> {
    (0..tt.outputs())
        .map(|j| expr_from_cubes(&simplify_resolution(&minterms(tt, j).expect("j in range"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolexpr::{parse, truth_table};
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn cube(bits: &str, mask: &str) -> Cube {
        Cube::new(bv(bits), bv(mask)).unwrap()
    }

    fn list(n: usize, minterms: &[&str]) -> CubeList {
        CubeList::new(n, minterms.iter().map(|m| Cube::minterm(bv(m))).collect()).unwrap()
    }

    fn table(exprs: &str, n: usize) -> TruthTable {
        let exprs: Vec<_> = exprs
            .split(';')
            .map(|e| parse(e, Some(n)).unwrap())
            .collect();
        truth_table(&exprs, n).unwrap()
    }

    #[test]
    fn cubes_are_normalized() {
        assert_eq!(cube("111", "010"), cube("101", "010"));
        assert_eq!(cube("111", "010").bits(), bv("101"));
        assert_eq!(cube("101", "010").literal_count(), 2);
        assert!(Cube::new(bv("10"), bv("1")).is_err());
    }

    #[test]
    fn minterm_examples() {
        let xor = minterms(&table("x1 ^ x2", 2), 0).unwrap();
        assert_eq!(xor, list(2, &["01", "10"]));
        let maj = minterms(&table("(x1 & x2) | (x1 & x3) | (x2 & x3)", 3), 0).unwrap();
        assert_eq!(maj, list(3, &["011", "101", "110", "111"]));
        assert!(minterms(&table("0", 2), 0).unwrap().is_empty());
        assert!(minterms(&table("0", 2), 1).is_err());
    }

    /// All prime implicants by exhaustive enumeration of the 3^n cubes.
    fn brute_force_primes(n: usize, on: &HashSet<usize>) -> HashSet<Cube> {
        let mut implicants = Vec::new();
        for mask in 0u64..1 << n {
            for bits in 0u64..1 << n {
                if bits & mask != 0 {
                    continue;
                }
                let c = Cube::from_raw(n, bits, mask);
                let covered: Vec<_> = (0..1usize << n)
                    .filter(|&k| c.covers(&decode(k, n).unwrap()))
                    .collect();
                if covered.iter().all(|k| on.contains(k)) {
                    implicants.push(c);
                }
            }
        }
        let contains = |big: &Cube, small: &Cube| {
            big.mask & small.mask == small.mask && (big.bits ^ small.bits) & !big.mask == 0
        };
        implicants
            .iter()
            .filter(|c| !implicants.iter().any(|d| d != *c && contains(d, c)))
            .copied()
            .collect()
    }

    #[test]
    fn majority_simplifies_to_pairwise_products() {
        let s = simplify_resolution(&list(3, &["011", "101", "110", "111"]));
        assert_eq!(
            s.cubes(),
            &[cube("011", "100"), cube("101", "010"), cube("110", "001")]
        );
        let on: HashSet<usize> = [3, 5, 6, 7].into();
        let primes = brute_force_primes(3, &on);
        assert_eq!(s.cubes().iter().copied().collect::<HashSet<_>>(), primes);
        assert_eq!(s.covered_set(), vec![3, 5, 6, 7]);
    }

    #[test]
    fn single_cube_is_unchanged() {
        let one = list(3, &["101"]);
        assert_eq!(simplify_resolution(&one), one);
        assert!(simplify_resolution(&list(2, &[])).is_empty());
    }

    #[test]
    fn oracle_output_matches_listing() {
        // third output of (x1, x2, x3 ^ (x1 & !x2))
        let tt = table("x1; x2; x3 ^ (x1 & !x2)", 3);
        let terms = minterms(&tt, 2).unwrap();
        assert_eq!(terms, list(3, &["001", "011", "100", "111"]));
        let s = simplify_resolution(&terms);
        assert_eq!(
            s.cubes(),
            &[cube("100", "000"), cube("001", "010"), cube("011", "100")]
        );
        let e = expr_from_cubes(&s);
        assert_eq!(
            e,
            parse("x1 & !x2 & !x3 | !x1 & x3 | x2 & x3", None).unwrap()
        );
        assert_eq!(e.to_compact_string(), "x1 & !x2 & !x3 | !x1 & x3 | x2 & x3");
        assert_eq!(
            e.to_paper_style(true),
            "x0*NOT[x1]*NOT[x2]+NOT[x0]*x2+x1*x2"
        );

        let first = expr_from_cubes(&simplify_resolution(&minterms(&tt, 0).unwrap()));
        assert_eq!(first, Expr::var(1));
    }

    #[test]
    fn expr_from_cubes_examples() {
        assert_eq!(expr_from_cubes(&list(2, &[])), Expr::Const(false));
        assert_eq!(
            expr_from_cubes(&list(2, &["10"])),
            parse("x1 & !x2", None).unwrap()
        );
        let full = CubeList::new(2, vec![cube("00", "11")]).unwrap();
        assert_eq!(expr_from_cubes(&full), Expr::Const(true));
    }

    #[test]
    fn equivalent_examples() {
        let maj = table("(x1 & x2) | (x1 & x3) | (x2 & x3)", 3);
        let simplified = sop_expressions(&maj).remove(0);
        assert!(equivalent(&simplified, &maj, 0));
        assert!(!equivalent(
            &parse("x1", None).unwrap(),
            &table("!x1", 1),
            0
        ));
        let xor = table("x1 ^ x2", 2);
        assert!(equivalent(&parse("x1 ^ x2", None).unwrap(), &xor, 0));
        assert!(!equivalent(&parse("x3", None).unwrap(), &xor, 0));
        assert!(!equivalent(&parse("x1", None).unwrap(), &xor, 1));
    }

    #[test]
    fn resolution_may_leave_redundant_terms() {
        // x1·!x2 + x2·x3 + x1·x3 is covered by two terms, but all three primes
        // survive: there is no covering step.
        let tt = table("x1 & !x2 | x2 & x3", 3);
        let s = simplify_resolution(&minterms(&tt, 0).unwrap());
        assert_eq!(s.len(), 3);
        assert!(equivalent(&expr_from_cubes(&s), &tt, 0));
    }

    fn arb_table(max_n: usize) -> impl Strategy<Value = TruthTable> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(0u64..4, 1usize << n).prop_map(move |rows| {
                TruthTable::new(
                    n,
                    2,
                    rows.iter()
                        .map(|&r| decode(r as usize, 2).unwrap())
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn simplification_is_sound(tt in arb_table(5)) {
            for j in 0..tt.outputs() {
                let terms = minterms(&tt, j).unwrap();
                let s = simplify_resolution(&terms);
                prop_assert!(equivalent(&expr_from_cubes(&s), &tt, j));
                // cover: every minterm covered, nothing outside the on-set
                let on: Vec<usize> = (0..1usize << tt.inputs()).filter(|&k| tt.output_bit(k, j)).collect();
                prop_assert_eq!(s.covered_set(), on);
                // idempotent on the covered set
                prop_assert_eq!(simplify_resolution(&s).covered_set(), s.covered_set());
                // masks only grow
                prop_assert!(s.cubes().iter().all(|c| c.literal_count() <= tt.inputs() as u32));
                let unique: HashSet<_> = s.cubes().iter().collect();
                prop_assert_eq!(unique.len(), s.len());
            }
        }

        #[test]
        fn result_is_the_prime_implicant_set(tt in arb_table(4)) {
            let on: HashSet<usize> = (0..1usize << tt.inputs()).filter(|&k| tt.output_bit(k, 0)).collect();
            let s = simplify_resolution(&minterms(&tt, 0).unwrap());
            let got: HashSet<Cube> = s.cubes().iter().copied().collect();
            prop_assert_eq!(got, brute_force_primes(tt.inputs(), &on));
        }
    }
}
