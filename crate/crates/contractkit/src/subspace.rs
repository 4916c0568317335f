//! Linear subspaces of a rational vector space and their lattice operations.
//!
//! A [`Subspace`] stores a canonical basis: the reduced column echelon form
//! of any spanning set. Canonicalization makes span equality a plain matrix
//! comparison and keeps every operation deterministic, so re-running with a
//! permuted spanning set yields an identical value.
//!
//! Operations panic on ambient-dimension mismatches; higher layers validate
//! dimensions before calling in here.

use num_traits::Zero;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A linear subspace of `Q^ambient_dim`, held as a canonical basis matrix
/// (`ambient_dim x dim`, columns linearly independent). The zero subspace
/// has a basis with no columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// Span of the columns of `m`, reduced to the canonical basis.
    pub fn from_columns(m: &Matrix) -> Self {
        let basis = column_echelon(m);
        Subspace {
            ambient_dim: m.rows(),
            basis,
        }
    }

    /// Span of explicit vectors (each of length `ambient_dim`).
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(ambient_dim, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
            for i in 0..ambient_dim {
                m[(i, j)] = v[i].clone();
            }
        }
        Subspace::from_columns(&m)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// `{x | Mx = 0}`; lives in the domain of `M`.
    pub fn kernel(m: &Matrix) -> Self {
        Subspace::from_columns(&m.kernel_basis())
    }

    /// Column span of `M`; lives in the codomain of `M`.
    pub fn image(m: &Matrix) -> Self {
        Subspace::from_columns(m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one column per dimension.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Span of the union of both subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "sum: ambient dimension mismatch"
        );
        Subspace::from_columns(&Matrix::hstack(&[&self.basis, &other.basis]))
    }

    /// Intersection, computed from the kernel of `[B_V | -B_W]`: a kernel
    /// element pairs coefficients of a vector expressible in both bases.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "intersect: ambient dimension mismatch"
        );
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        let stacked = Matrix::hstack(&[&self.basis, &other.basis.neg()]);
        let pairs = stacked.kernel_basis();
        // First block of each kernel column holds coefficients in self's basis.
        let coeffs = pairs.select_rows(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::from_columns(&self.basis.mul(&coeffs))
    }

    /// `{x | Mx in self}`. Always contains `kernel(M)`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(
            m.rows(),
            self.ambient_dim,
            "preimage: codomain dimension mismatch"
        );
        // Solutions (x, c) of Mx = B c, projected onto x.
        let stacked = Matrix::hstack(&[m, &self.basis.neg()]);
        let pairs = stacked.kernel_basis();
        let xs = pairs.select_rows(&(0..m.cols()).collect::<Vec<_>>());
        Subspace::from_columns(&xs)
    }

    /// `span{ Mv | v in self }`.
    pub fn apply(&self, m: &Matrix) -> Subspace {
        assert_eq!(
            m.cols(),
            self.ambient_dim,
            "apply: domain dimension mismatch"
        );
        Subspace::from_columns(&m.mul(&self.basis))
    }

    /// Exact inclusion test `other ⊆ self`, decided by rank comparison.
    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "contains: ambient dimension mismatch"
        );
        if other.is_zero() {
            return true;
        }
        let joint = Matrix::hstack(&[&self.basis, &other.basis]);
        joint.rank() == self.dim()
    }

    /// Span equality. Because bases are canonical this is structural
    /// equality, but it still checks the ambient dimensions match.
    pub fn equals(&self, other: &Subspace) -> bool {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "equals: ambient dimension mismatch"
        );
        self == other
    }

    /// Membership test for a single vector.
    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        self.contains(&Subspace::from_vectors(self.ambient_dim, &[v.to_vec()]))
    }

    /// Projection onto a contiguous coordinate block: basis columns are
    /// truncated to the block and re-reduced to an independent set.
    pub fn project(&self, range: std::ops::Range<usize>) -> Subspace {
        assert!(
            range.end <= self.ambient_dim && range.start <= range.end,
            "project: coordinate range out of bounds"
        );
        self.project_coords(&range.collect::<Vec<_>>())
    }

    /// Projection onto an arbitrary list of coordinates (in the given order).
    pub fn project_coords(&self, coords: &[usize]) -> Subspace {
        for &c in coords {
            assert!(c < self.ambient_dim, "project: coordinate out of bounds");
        }
        Subspace::from_columns(&self.basis.select_rows(coords))
    }
}

/// Reduced column echelon form of the column span: transpose, row-reduce,
/// keep nonzero rows, transpose back. Unique per span, pivots normalized.
fn column_echelon(m: &Matrix) -> Matrix {
    let (reduced, pivots) = m.transpose().rref();
    let kept: Vec<usize> = (0..pivots.len()).collect();
    reduced.select_rows(&kept).transpose()
}
