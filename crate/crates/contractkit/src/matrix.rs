//! Dense matrices over exact rationals.
//!
//! Row reduction here is the single primitive that every rank, kernel, and
//! inclusion decision in the crate is built on. Zero-row and zero-column
//! matrices are first-class citizens: systems may have no constraint rows
//! (`H` is `0 x n`) or no driving variable (`G` is `n x 0`).

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{int, scalar_to_string, Scalar};

/// Row-major dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    /// Builds a matrix from a row-major entry vector.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "matrix entries must be rows*cols"
        );
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds from nested rows; every row must have the same length.
    /// An empty outer vector yields a `0 x 0` matrix, so callers that know
    /// the column count for empty matrices should use [`Matrix::zeros`].
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().cloned());
        }
        Matrix::new(r, c, entries)
    }

    /// Integer convenience constructor, mostly for tests and fixtures.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&n| int(n)).collect())
                .collect(),
        )
    }

    pub fn from_column(col: Vec<Scalar>) -> Self {
        let n = col.len();
        Matrix::new(n, 1, col)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        (0..self.cols).map(|j| self.column(j))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|e| e * factor).collect();
        Matrix::new(self.rows, self.cols, entries)
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&int(-1))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Matrix::new(self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions must agree: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(blocks: &[&Matrix]) -> Matrix {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)].clone();
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vstack(blocks: &[&Matrix]) -> Matrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            for i in 0..b.rows {
                for j in 0..cols {
                    out[(offset + i, j)] = b[(i, j)].clone();
                }
            }
            offset += b.rows;
        }
        out
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Copy of the listed rows, in order.
    pub fn select_rows(&self, indices: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(indices.len(), self.cols);
        for (i, &src) in indices.iter().enumerate() {
            for j in 0..self.cols {
                out[(i, j)] = self[(src, j)].clone();
            }
        }
        out
    }

    /// In-place Gauss-Jordan elimination to reduced row echelon form.
    /// Returns the pivot column indices in increasing order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, src);
            let inv = self[(pivot_row, col)].recip();
            for j in col..self.cols {
                let scaled = &self[(pivot_row, j)] * &inv;
                self[(pivot_row, j)] = scaled;
            }
            for r in 0..self.rows {
                if r == pivot_row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for j in col..self.cols {
                    let delta = &factor * &self[(pivot_row, j)];
                    self[(r, j)] -= delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x | Mx = 0}` as the columns of an `cols x nullity` matrix,
    /// via the standard free-variable construction on the RREF.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -r[(row, f)].clone();
            }
        }
        basis
    }

    /// One exact solution `X` of `self * X = rhs` (free variables set to
    /// zero), or `None` when the system is inconsistent. Deterministic.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve rhs row mismatch");
        let augmented = Matrix::hstack(&[self, rhs]);
        let (r, pivots) = augmented.rref();
        // A pivot landing in the rhs block means some equation reads 0 = 1.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(scalar_to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Builds a matrix from integer literal rows: `mat![[1, 0], [0, 1]]`.
#[macro_export]
macro_rules! mat {
    ($([$($x:expr),* $(,)?]),* $(,)?) => {
        $crate::matrix::Matrix::from_int_rows(&[$(vec![$($x as i64),*]),*])
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn multiply_and_identity() {
        let a = mat![[1, 2], [3, 4]];
        let i = Matrix::identity(2);
        assert_eq!(a.mul(&i), a);
        let b = mat![[0, 1], [1, 0]];
        assert_eq!(a.mul(&b), mat![[2, 1], [4, 3]]);
    }

    #[test]
    fn rref_ranks() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(2, 5).rank(), 0);
        assert_eq!(mat![[1, 2], [2, 4]].rank(), 1);
        // 0-row and 0-col matrices have rank 0.
        assert_eq!(Matrix::zeros(0, 4).rank(), 0);
        assert_eq!(Matrix::zeros(4, 0).rank(), 0);
    }

    #[test]
    fn rref_normalizes_pivots() {
        let m = mat![[2, 4], [1, 3]];
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, Matrix::identity(2));
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert_eq!(Matrix::identity(3).kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_of_zero_row_matrix_is_everything() {
        let k = Matrix::zeros(0, 4).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.rank(), 4);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = mat![[1, 2, 3], [2, 4, 6]];
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 2);
        let prod = m.mul(&k);
        assert!(prod.is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = mat![[1, 1], [0, 1]];
        let rhs = mat![[3], [1]];
        let x = a.solve(&rhs).unwrap();
        assert_eq!(a.mul(&x), rhs);

        let singular = mat![[1, 1], [1, 1]];
        assert!(singular.solve(&mat![[0], [1]]).is_none());
        // Underdetermined systems get the free-variables-zero solution.
        let wide = mat![[1, 1, 1]];
        let x = wide.solve(&mat![[5]]).unwrap();
        assert_eq!(wide.mul(&x), mat![[5]]);
    }

    #[test]
    fn block_assembly() {
        let a = mat![[1]];
        let b = mat![[2, 3]];
        let d = Matrix::block_diag(&[&a, &b]);
        assert_eq!(d, mat![[1, 0, 0], [0, 2, 3]]);
        let empty_rows = Matrix::zeros(0, 3);
        let stacked = Matrix::vstack(&[&empty_rows, &mat![[1, 2, 3]]]);
        assert_eq!(stacked, mat![[1, 2, 3]]);
    }

    #[test]
    fn rational_entries_stay_exact() {
        let m = Matrix::from_rows(vec![vec![ratio(1, 3), ratio(1, 6)]]);
        let scaled = m.scale(&int(6));
        assert_eq!(scaled, mat![[2, 1]]);
    }
}
