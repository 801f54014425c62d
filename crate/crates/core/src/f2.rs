//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words. Reduction records every row addition so
//! that circuits can be read back off the elimination.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(WORD);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from 0/1 rows.
    ///
    /// # Panics
    ///
    /// Panics if the rows have different lengths or contain values other than 0 and 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row {r}");
            for (c, &v) in row.iter().enumerate() {
                assert!(v <= 1, "entry ({r},{c}) is not a bit");
                if v == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix whose rows are the given bit vectors, all of length `cols`.
    pub fn from_bit_rows(rows: &[Vec<bool>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {r} has wrong length");
            for (c, &b) in row.iter().enumerate() {
                if b {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        (self.data[r * self.words + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        let w = &mut self.data[r * self.words + c / WORD];
        let bit = 1u64 << (c % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    /// `R_target <- R_target + R_source`.
    pub fn add_row(&mut self, target: usize, source: usize) {
        assert_ne!(target, source, "row addition onto itself");
        assert!(target < self.rows && source < self.rows);
        let w = self.words;
        for k in 0..w {
            let s = self.data[source * w + k];
            self.data[target * w + k] ^= s;
        }
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn row(&self, r: usize) -> Vec<bool> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn column(&self, c: usize) -> Vec<bool> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Column indices holding a 1 in row `r`.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.get(r, c)).collect()
    }

    /// Row indices holding a 1 in column `c`.
    pub fn col_support(&self, c: usize) -> Vec<usize> {
        (0..self.rows).filter(|&r| self.get(r, c)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Matrix-vector product `M v` over GF(2).
    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                (0..self.cols).filter(|&c| v[c] && self.get(r, c)).count() % 2 == 1
            })
            .collect()
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = BinaryMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let w = out.words;
                    for j in 0..w {
                        out.data[r * w + j] ^= rhs.data[k * w + j];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reorders rows so that row `p` of the result is row `order[p]` of `self`.
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.rows);
        let mut out = Self::zeros(self.rows, self.cols);
        for (p, &src) in order.iter().enumerate() {
            out.data[p * self.words..(p + 1) * self.words].copy_from_slice(self.row_words(src));
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref_with_trace(self).rank()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Solves `M x = b`. Free variables are set to zero.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = BinaryMatrix::zeros(self.rows, self.cols + 1);
        for (r, &rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                if self.get(r, c) {
                    aug.set(r, c, true);
                }
            }
            if rhs {
                aug.set(r, self.cols, true);
            }
        }
        let ech = rref_with_trace(&aug);
        let mut x = vec![false; self.cols];
        for (p, &col) in ech.pivot_cols.iter().enumerate() {
            if col == self.cols {
                return None;
            }
            x[col] = ech.matrix.get(p, self.cols);
        }
        Some(x)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// One elementary row addition `R_target <- R_target + R_source`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowOp {
    pub target: usize,
    pub source: usize,
}

/// The row additions performed by a reduction, plus the final row order.
///
/// `permutation[p]` is the original row index that ends up at position `p`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RowOpTrace {
    pub ops: Vec<RowOp>,
    pub permutation: Vec<usize>,
}

impl RowOpTrace {
    /// Applies the additions, then the permutation, to `m`.
    pub fn replay(&self, m: &BinaryMatrix) -> BinaryMatrix {
        let mut work = m.clone();
        for op in &self.ops {
            work.add_row(op.target, op.source);
        }
        work.permute_rows(&self.permutation)
    }

    /// The accumulated row-operation matrix `E` in original row indices, so that
    /// `E M` equals the reduced matrix before permutation.
    pub fn accumulated(&self, rows: usize) -> BinaryMatrix {
        let mut e = BinaryMatrix::identity(rows);
        for op in &self.ops {
            e.add_row(op.target, op.source);
        }
        e
    }
}

/// Result of [`rref_with_trace`].
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Reduced row echelon form, zero rows at the bottom.
    pub matrix: BinaryMatrix,
    pub trace: RowOpTrace,
    /// Pivot column of each nonzero row of `matrix`, ascending.
    pub pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Original indices of the pivot rows, in echelon order.
    pub fn pivot_rows(&self) -> &[usize] {
        &self.trace.permutation[..self.rank()]
    }

    /// Original indices of the rows that reduced to zero, ascending.
    pub fn zero_rows(&self) -> &[usize] {
        &self.trace.permutation[self.rank()..]
    }
}

/// Full Gauss-Jordan reduction.
///
/// Columns are scanned left to right; the pivot for a column is the
/// lowest-index original row that is not yet a pivot and has a 1 there.
/// Rows are never swapped during elimination, so every recorded operation
/// is an addition; the final ordering is returned as a permutation.
pub fn rref_with_trace(m: &BinaryMatrix) -> Echelon {
    let mut work = m.clone();
    let mut is_pivot = vec![false; m.rows()];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut ops = Vec::new();

    for col in 0..m.cols() {
        let Some(prow) = (0..m.rows()).find(|&r| !is_pivot[r] && work.get(r, col)) else {
            continue;
        };
        is_pivot[prow] = true;
        // below: rows that are not yet pivots
        for (r, &done) in is_pivot.iter().enumerate() {
            if r != prow && !done && work.get(r, col) {
                work.add_row(r, prow);
                ops.push(RowOp { target: r, source: prow });
            }
        }
        // above: earlier pivot rows
        for &(r, _) in &pivots {
            if work.get(r, col) {
                work.add_row(r, prow);
                ops.push(RowOp { target: r, source: prow });
            }
        }
        pivots.push((prow, col));
    }

    let mut permutation: Vec<usize> = pivots.iter().map(|&(r, _)| r).collect();
    permutation.extend((0..m.rows()).filter(|&r| !is_pivot[r]));
    let matrix = work.permute_rows(&permutation);
    Echelon {
        matrix,
        trace: RowOpTrace { ops, permutation },
        pivot_cols: pivots.iter().map(|&(_, c)| c).collect(),
    }
}

pub fn rank(m: &BinaryMatrix) -> usize {
    m.rank()
}

/// Canonical basis of `ker(M)`: one vector per free column, ordered by that column.
pub fn kernel_basis(m: &BinaryMatrix) -> Vec<Vec<bool>> {
    let ech = rref_with_trace(m);
    let mut is_pivot_col = vec![false; m.cols()];
    for &c in &ech.pivot_cols {
        is_pivot_col[c] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot_col[f])
        .map(|f| {
            let mut v = vec![false; m.cols()];
            v[f] = true;
            for (p, &pc) in ech.pivot_cols.iter().enumerate() {
                if ech.matrix.get(p, f) {
                    v[pc] = true;
                }
            }
            v
        })
        .collect()
}

/// Kronecker product; the row/column index of `A` is the outer one.
pub fn kron(a: &BinaryMatrix, b: &BinaryMatrix) -> BinaryMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = BinaryMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            if !a.get(i, j) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    if b.get(k, l) {
                        out.set(i * br + k, j * bc + l, true);
                    }
                }
            }
        }
    }
    out
}

/// Stacks blocks vertically, in order.
pub fn vstack(blocks: &[BinaryMatrix]) -> Result<BinaryMatrix> {
    let Some(first) = blocks.first() else {
        return Err(Error::Dimension("vstack of an empty block list".into()));
    };
    let cols = first.cols();
    if let Some(bad) = blocks.iter().find(|b| b.cols() != cols) {
        return Err(Error::Dimension(format!(
            "vstack column mismatch: {} vs {}",
            cols,
            bad.cols()
        )));
    }
    let rows = blocks.iter().map(BinaryMatrix::rows).sum();
    let mut out = BinaryMatrix::zeros(rows, cols);
    let mut offset = 0;
    for b in blocks {
        let n = b.rows() * b.words;
        out.data[offset..offset + n].copy_from_slice(&b.data);
        offset += n;
    }
    Ok(out)
}

/// True if the row spaces of `a` and `b` coincide.
pub fn same_row_space(a: &BinaryMatrix, b: &BinaryMatrix) -> bool {
    if a.cols() != b.cols() {
        return false;
    }
    let ra = rref_with_trace(a);
    let rb = rref_with_trace(b);
    if ra.rank() != rb.rank() {
        return false;
    }
    let r = ra.rank();
    (0..r).all(|p| ra.matrix.row(p) == rb.matrix.row(p))
}

/// True if `ker(a) = ker(b)`.
pub fn same_kernel(a: &BinaryMatrix, b: &BinaryMatrix) -> bool {
    // Kernels agree exactly when row spaces agree.
    same_row_space(a, b)
}
