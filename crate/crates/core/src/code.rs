//! Classical LDPC codes given by a parity-check matrix, their dualities and
//! product constructions.
//!
//! Product codes index bit `(i, j)` (bit `i` of the first code, bit `j` of the
//! second) by column `j * n1 + i`, i.e. the second code's index is the outer
//! Kronecker index everywhere.

use crate::error::{Error, Result};
use crate::f2::{self, kernel_basis, kron, vstack, BinaryMatrix};

/// A classical code `ker(H)` with `H` an `m x n` parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCode {
    h: BinaryMatrix,
    rank: usize,
    symmetries: Vec<Vec<bool>>,
    redundancies: Vec<Vec<bool>>,
}

impl ClassicalCode {
    pub fn from_matrix(h: BinaryMatrix) -> Self {
        let rank = h.rank();
        let symmetries = kernel_basis(&h);
        let redundancies = kernel_basis(&h.transpose());
        Self {
            h,
            rank,
            symmetries,
            redundancies,
        }
    }

    /// Periodic Ising chain on `n` sites: check `a` acts on bits `a-1` and `a` (mod `n`).
    pub fn ising_ring(n: usize) -> Self {
        assert!(n >= 2, "a ring needs at least two sites");
        Self::from_matrix(BinaryMatrix::from_fn(n, n, |a, i| {
            i == a || i == (a + n - 1) % n
        }))
    }

    /// Open Ising chain on `n` sites: check `a` acts on bits `a` and `a+1`.
    pub fn ising_chain(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_matrix(BinaryMatrix::from_fn(n - 1, n, |a, i| i == a || i == a + 1))
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.h
    }

    /// Number of bits.
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Number of checks.
    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the code, `n - rank(H)`.
    pub fn k(&self) -> usize {
        self.symmetries.len()
    }

    /// Number of independent redundancies, `m - rank(H)`.
    pub fn k_transpose(&self) -> usize {
        self.redundancies.len()
    }

    /// Bits acted on by check `a`.
    pub fn check_support(&self, a: usize) -> Vec<usize> {
        self.h.row_support(a)
    }

    /// Checks acting on bit `i`.
    pub fn bit_support(&self, i: usize) -> Vec<usize> {
        self.h.col_support(i)
    }

    /// Tanner-graph edges `(bit, check)`, grouped by check.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.m())
            .flat_map(|a| self.check_support(a).into_iter().map(move |i| (i, a)))
            .collect()
    }

    pub fn symmetry_vectors(&self) -> &[Vec<bool>] {
        &self.symmetries
    }

    pub fn redundancy_vectors(&self) -> &[Vec<bool>] {
        &self.redundancies
    }

    /// Basis of `ker(H)` as bit sets (supports of the logical X operators).
    pub fn symmetries(&self) -> Vec<Vec<usize>> {
        self.symmetries.iter().map(|v| support(v)).collect()
    }

    /// Basis of `ker(H^T)` as check sets whose check operators multiply to identity.
    pub fn redundancies(&self) -> Vec<Vec<usize>> {
        self.redundancies.iter().map(|v| support(v)).collect()
    }

    pub fn is_codeword(&self, word: &[bool]) -> bool {
        self.h.mul_vec(word).iter().all(|&b| !b)
    }

    /// The KW dual: bits and checks exchanged.
    pub fn transpose_code(&self) -> Self {
        Self::from_matrix(self.h.transpose())
    }

    /// The orthogonal complement: the canonical codeword basis becomes the checks.
    pub fn perp_code(&self) -> Self {
        Self::from_matrix(BinaryMatrix::from_bit_rows(&self.symmetries, self.n()))
    }

    /// Check subsets `G` with `|G ∩ R'| = δ(R, R') mod 2` against the redundancy basis.
    ///
    /// Single-check sets are used when every redundancy has one; otherwise the
    /// pairing system is solved directly.
    pub fn defect_dual_basis(&self) -> Vec<Vec<usize>> {
        let kt = self.k_transpose();
        if kt == 0 {
            return Vec::new();
        }
        let r = BinaryMatrix::from_bit_rows(&self.redundancies, self.m());
        let unit = |beta: usize| -> Vec<bool> { (0..kt).map(|b| b == beta).collect() };

        let singles: Option<Vec<Vec<usize>>> = (0..kt)
            .map(|beta| {
                let target = unit(beta);
                (0..self.m())
                    .find(|&a| r.column(a) == target)
                    .map(|a| vec![a])
            })
            .collect();
        if let Some(singles) = singles {
            return singles;
        }

        (0..kt)
            .map(|beta| {
                let g = r
                    .solve(&unit(beta))
                    .expect("redundancy basis is linearly independent");
                support(&g)
            })
            .collect()
    }
}

fn support(v: &[bool]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// `H = [ I_{n2} ⊗ H1 ; H2 ⊗ I_{n1} ]`: row checks of `c1` on every row `j`
/// followed by column checks of `c2` on every column `i`.
pub fn tensor_product(c1: &ClassicalCode, c2: &ClassicalCode) -> ClassicalCode {
    let (n1, n2) = (c1.n(), c2.n());
    let top = kron(&BinaryMatrix::identity(n2), &c1.h);
    let bottom = kron(&c2.h, &BinaryMatrix::identity(n1));
    ClassicalCode::from_matrix(vstack(&[top, bottom]).expect("blocks share n1*n2 columns"))
}

/// `H = H2 ⊗ H1`: check `(a, b)` sits at row `b * m1 + a` and acts on `δ1(a) × δ2(b)`.
pub fn check_product(c1: &ClassicalCode, c2: &ClassicalCode) -> ClassicalCode {
    ClassicalCode::from_matrix(kron(&c2.h, &c1.h))
}

/// All `q`-subsets of `0..p` in lexicographic order.
pub fn subsets(p: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, p: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for s in start..p {
            cur.push(s);
            rec(s + 1, p, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, p, q, &mut Vec::new(), &mut out);
    out
}

/// The block `⊗_s M_s(S)` with `M_s = H_s` for `s ∈ S`, else `I_{n_s}`; the
/// last code carries the outermost index.
pub fn pq_block(codes: &[ClassicalCode], subset: &[usize]) -> BinaryMatrix {
    let factor = |s: usize| {
        if subset.contains(&s) {
            codes[s].h.clone()
        } else {
            BinaryMatrix::identity(codes[s].n())
        }
    };
    let mut acc = BinaryMatrix::identity(1);
    for s in (0..codes.len()).rev() {
        acc = kron(&acc, &factor(s));
    }
    acc
}

/// Stacks `pq_block` over every `q`-subset of the `p = codes.len()` codes.
pub fn pq_product(codes: &[ClassicalCode], q: usize) -> Result<ClassicalCode> {
    let p = codes.len();
    if q == 0 || q > p {
        return Err(Error::Argument(format!(
            "q must satisfy 1 <= q <= p, got q={q}, p={p}"
        )));
    }
    let blocks: Vec<BinaryMatrix> = subsets(p, q)
        .iter()
        .map(|s| pq_block(codes, s))
        .collect();
    Ok(ClassicalCode::from_matrix(vstack(&blocks)?))
}

/// Kernel equality of two codes' parity checks.
pub fn same_code(a: &ClassicalCode, b: &ClassicalCode) -> bool {
    f2::same_kernel(&a.h, &b.h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ising3() -> ClassicalCode {
        ClassicalCode::ising_ring(3)
    }

    /// All words of length `n` in `ker(h)`, by enumeration.
    fn brute_kernel(h: &BinaryMatrix) -> Vec<u32> {
        let n = h.cols();
        (0..1u32 << n)
            .filter(|&w| {
                let v: Vec<bool> = (0..n).map(|i| w >> i & 1 == 1).collect();
                h.mul_vec(&v).iter().all(|&b| !b)
            })
            .collect()
    }

    #[test]
    fn ising3_matches_worked_example() {
        let c = ising3();
        assert_eq!(
            c.parity_check(),
            &BinaryMatrix::from_rows(&[[1, 0, 1], [1, 1, 0], [0, 1, 1]])
        );
        assert_eq!((c.n(), c.m(), c.k(), c.k_transpose()), (3, 3, 1, 1));
        assert_eq!(c.symmetries(), vec![vec![0, 1, 2]]);
        assert_eq!(c.redundancies(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn from_matrix_small_cases() {
        let one = ClassicalCode::from_matrix(BinaryMatrix::from_rows(&[[1]]));
        assert_eq!((one.k(), one.k_transpose()), (0, 0));
        assert!(one.symmetries().is_empty());

        let chain = ClassicalCode::ising_chain(3);
        assert_eq!(chain.parity_check(), &BinaryMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]));
        assert_eq!(brute_kernel(chain.parity_check()).len(), 2);
        assert_eq!(brute_kernel(&chain.parity_check().transpose()).len(), 1);
        assert_eq!((chain.k(), chain.k_transpose()), (1, 0));
        assert!(chain.redundancies().is_empty());
    }

    #[test]
    fn supports_are_consistent() {
        let c = ClassicalCode::ising_chain(4);
        for a in 0..c.m() {
            for i in c.check_support(a) {
                assert!(c.bit_support(i).contains(&a));
            }
        }
        assert_eq!(c.edges().len(), c.parity_check().count_ones());
    }

    #[test]
    fn transpose_and_perp() {
        let c = ising3();
        let t = c.transpose_code();
        assert_eq!((t.k(), t.k_transpose()), (1, 1));
        assert_eq!(t.transpose_code(), c);

        let chain_t = ClassicalCode::ising_chain(3).transpose_code();
        assert_eq!((chain_t.n(), chain_t.m()), (2, 3));

        assert_eq!(c.perp_code().parity_check(), &BinaryMatrix::from_rows(&[[1, 1, 1]]));
        let full = ClassicalCode::from_matrix(BinaryMatrix::identity(4));
        assert_eq!(full.perp_code().parity_check().shape(), (0, 4));
        assert!(same_code(&c.perp_code().perp_code(), &c));
    }

    #[test]
    fn tensor_product_of_ising3() {
        let c = ising3();
        let t = tensor_product(&c, &c);
        assert_eq!(t.parity_check().shape(), (18, 9));
        assert_eq!(t.symmetries(), vec![(0..9).collect::<Vec<_>>()]);

        // row-check (a, j) at row j*m1 + a, column-check (i, b) at row 9 + b*n1 + i
        for j in 0..3 {
            for a in 0..3 {
                let expect: Vec<usize> = c.check_support(a).iter().map(|&i| j * 3 + i).collect();
                assert_eq!(t.check_support(j * 3 + a), expect);
            }
        }
        for b in 0..3 {
            for i in 0..3 {
                let expect: Vec<usize> = c.check_support(b).iter().map(|&j| j * 3 + i).collect();
                assert_eq!(t.check_support(9 + b * 3 + i), expect);
            }
        }
    }

    #[test]
    fn tensor_codewords_are_row_and_column_codewords() {
        let c = ising3();
        let t = tensor_product(&c, &c);
        for w in 0..512u32 {
            let word: Vec<bool> = (0..9).map(|k| w >> k & 1 == 1).collect();
            let rows_ok = (0..3).all(|j| c.is_codeword(&word[j * 3..j * 3 + 3]));
            let cols_ok = (0..3).all(|i| {
                let col: Vec<bool> = (0..3).map(|j| word[j * 3 + i]).collect();
                c.is_codeword(&col)
            });
            assert_eq!(t.is_codeword(&word), rows_ok && cols_ok, "word {w:09b}");
        }
    }

    #[test]
    fn tensor_with_trivial_code_is_identity() {
        let c = ClassicalCode::ising_chain(4);
        let trivial = ClassicalCode::from_matrix(BinaryMatrix::zeros(0, 1));
        assert_eq!(tensor_product(&c, &trivial).parity_check(), c.parity_check());
    }

    #[test]
    fn tensor_product_local_redundancies() {
        let c = ising3();
        let t = tensor_product(&c, &c);
        let redundancy_space = BinaryMatrix::from_bit_rows(t.redundancy_vectors(), t.m());
        for a in 0..3 {
            for b in 0..3 {
                let mut v = vec![false; t.m()];
                for j in c.check_support(b) {
                    v[j * 3 + a] = true;
                }
                for i in c.check_support(a) {
                    v[9 + b * 3 + i] = true;
                }
                assert!(t.parity_check().transpose().mul_vec(&v).iter().all(|&x| !x));
                // and it lies in the span of the cached basis
                let with = f2::vstack(&[redundancy_space.clone(), BinaryMatrix::from_bit_rows(&[v], t.m())]).unwrap();
                assert_eq!(with.rank(), redundancy_space.rank());
            }
        }
    }

    #[test]
    fn check_product_shapes_and_supports() {
        let c = ising3();
        let s = check_product(&c, &c);
        assert_eq!(s.parity_check().shape(), (9, 9));
        for a in 0..3 {
            for b in 0..3 {
                let mut expect: Vec<usize> = c
                    .check_support(a)
                    .iter()
                    .flat_map(|&i| c.check_support(b).into_iter().map(move |j| j * 3 + i))
                    .collect();
                expect.sort_unstable();
                assert_eq!(s.check_support(b * 3 + a), expect);
            }
        }
        let unit = ClassicalCode::from_matrix(BinaryMatrix::from_rows(&[[1]]));
        assert_eq!(check_product(&unit, &c).parity_check(), c.parity_check());
    }

    #[test]
    fn check_product_is_perp_of_tensor_of_perps() {
        let c1 = ising3();
        let c2 = ClassicalCode::ising_chain(3);
        let lhs = check_product(&c1, &c2);
        let rhs = tensor_product(&c1.perp_code(), &c2.perp_code()).perp_code();
        assert!(same_code(&lhs, &rhs));
    }

    #[test]
    fn pq_special_cases() {
        let c1 = ising3();
        let c2 = ClassicalCode::ising_chain(4);
        let codes = [c1.clone(), c2.clone()];
        assert_eq!(pq_product(&codes, 1).unwrap(), tensor_product(&c1, &c2));
        assert_eq!(pq_product(&codes, 2).unwrap(), check_product(&c1, &c2));
        assert!(matches!(pq_product(&codes, 0), Err(Error::Argument(_))));
        assert!(matches!(pq_product(&codes, 3), Err(Error::Argument(_))));
    }

    #[test]
    fn cubic_product_shape() {
        let c = ising3();
        let cubic = pq_product(&[c.clone(), c.clone(), c], 2).unwrap();
        assert_eq!(cubic.parity_check().shape(), (81, 27));
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn dual_basis_examples() {
        assert_eq!(ising3().defect_dual_basis(), vec![vec![0]]);
        assert!(ClassicalCode::ising_chain(5).defect_dual_basis().is_empty());
    }

    #[test]
    fn dual_basis_pairs_to_identity() {
        let c = ClassicalCode::from_matrix(BinaryMatrix::from_rows(&[[1, 1], [1, 1], [1, 1]]));
        let g = c.defect_dual_basis();
        let r = c.redundancies();
        for (b, gb) in g.iter().enumerate() {
            for (b2, rb) in r.iter().enumerate() {
                let overlap = gb.iter().filter(|a| rb.contains(a)).count() % 2;
                assert_eq!(overlap, usize::from(b == b2));
            }
        }
    }
}
