//! Linear systems in driving-variable form and their consistent subspaces.
//!
//! A system couples four maps on a state space `X = Q^n`:
//!
//! ```text
//!   x' = A x + G d      (d is the driving variable, D = Q^m)
//!   w  = C x            (w is the external variable, W = Q^p)
//!   0  = H x            (algebraic constraints, q rows)
//! ```
//!
//! Not every initial state admits a trajectory that keeps `H x = 0`; the
//! consistent subspace is the largest set of states that do, and is computed
//! here by a decreasing fixed-point iteration.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// A linear system in driving-variable form. `H` with zero rows means the
/// system is unconstrained; `G` with zero columns means it has no driving
/// variable. Environments, assumptions, and guarantees are all values of
/// this type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DVSystem {
    pub a: Matrix,
    pub g: Matrix,
    pub c: Matrix,
    pub h: Matrix,
    pub name: Option<String>,
}

impl DVSystem {
    /// Builds and validates a system; see [`DVSystem::validate`] for the
    /// dimension couplings.
    pub fn new(a: Matrix, g: Matrix, c: Matrix, h: Matrix) -> Result<Self, Error> {
        let sys = DVSystem {
            a,
            g,
            c,
            h,
            name: None,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Checks all dimension couplings: `A` is `n x n`, `G` is `n x m`,
    /// `C` is `p x n`, `H` is `q x n`.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.a.rows();
        if self.a.cols() != n {
            return Err(Error::StateNotSquare {
                rows: self.a.rows(),
                cols: self.a.cols(),
            });
        }
        if self.g.rows() != n {
            return Err(Error::DrivingRows {
                expected: n,
                found: self.g.rows(),
            });
        }
        if self.c.cols() != n {
            return Err(Error::ExternalCols {
                expected: n,
                found: self.c.cols(),
            });
        }
        if self.h.cols() != n {
            return Err(Error::ConstraintCols {
                expected: n,
                found: self.h.cols(),
            });
        }
        Ok(())
    }

    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn driving_dim(&self) -> usize {
        self.g.cols()
    }

    pub fn external_dim(&self) -> usize {
        self.c.rows()
    }

    pub fn constraint_count(&self) -> usize {
        self.h.rows()
    }

    /// The largest subspace `V` with `A V ⊆ V + im G` and `V ⊆ ker H`,
    /// i.e. the initial states from which some driving function keeps the
    /// constraints satisfied for all time.
    ///
    /// Computed by the decreasing iteration starting at `ker H` and
    /// refining with `V ↦ ker H ∩ A⁻¹(V + im G)` until stable; the
    /// dimension drops strictly until the fixed point, so this stops after
    /// at most `n + 1` rounds.
    pub fn consistent_subspace(&self) -> Subspace {
        let iterates = self.consistent_subspace_iterates();
        iterates.last().expect("iteration yields at least V0").clone()
    }

    /// All iterates of the fixed-point computation, first `ker H`, last the
    /// consistent subspace (the final two entries are equal). Useful for
    /// diagnosing why a state was rejected.
    pub fn consistent_subspace_iterates(&self) -> Vec<Subspace> {
        invariant_fixpoint_iterates(
            &Subspace::kernel(&self.h),
            &self.a,
            &Subspace::image(&self.g),
        )
    }

    /// Whether `x0` lies in the consistent subspace.
    pub fn is_consistent_state(&self, x0: &[Scalar]) -> Result<bool, Error> {
        if x0.len() != self.state_dim() {
            return Err(Error::StateLength {
                expected: self.state_dim(),
                found: x0.len(),
            });
        }
        Ok(self.consistent_subspace().contains_vector(x0))
    }
}

/// Decreasing fixed point `V0 = constraint`, `V_{k+1} = constraint ∩
/// A⁻¹(V_k + driving_image)`, returned with all iterates (the last two are
/// equal). Shared by the consistent-subspace computation and the largest
/// simulation relation.
///
/// The iteration cap defaults to `ambient + 1`, which the strict dimension
/// drop argument makes unreachable; `CONTRACTKIT_MAX_ITER` overrides it for
/// diagnostics, and hitting the cap panics.
pub(crate) fn invariant_fixpoint_iterates(
    constraint: &Subspace,
    a: &Matrix,
    driving_image: &Subspace,
) -> Vec<Subspace> {
    let ambient = constraint.ambient_dim();
    let cap = iteration_cap(ambient);
    let mut iterates = vec![constraint.clone()];
    for _ in 0..cap {
        let current = iterates.last().unwrap();
        let reachable = current.sum(driving_image);
        let next = constraint.intersect(&reachable.preimage(a));
        let done = next == *current;
        iterates.push(next);
        if done {
            return iterates;
        }
    }
    panic!(
        "subspace iteration did not stabilize within {cap} rounds (ambient dimension {ambient}); \
         raise CONTRACTKIT_MAX_ITER to diagnose"
    );
}

fn iteration_cap(ambient: usize) -> usize {
    match std::env::var("CONTRACTKIT_MAX_ITER") {
        Ok(v) => v
            .parse()
            .unwrap_or_else(|_| panic!("CONTRACTKIT_MAX_ITER must be a positive integer, got {v:?}")),
        Err(_) => ambient + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;
    use crate::scalar::{int, ratio};

    pub(crate) fn guarantees() -> DVSystem {
        // A = G = C = I, one spacing-policy constraint row (headway 1).
        DVSystem::new(
            Matrix::identity(4),
            Matrix::identity(4),
            Matrix::identity(4),
            mat![[-1, 0, 1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_minimal_system() {
        let sys = DVSystem::new(mat![[1]], mat![[1]], mat![[1]], Matrix::zeros(0, 1)).unwrap();
        assert_eq!(sys.state_dim(), 1);
        assert_eq!(sys.constraint_count(), 0);
    }

    #[test]
    fn validate_rejects_bad_external_map() {
        let err = DVSystem::new(
            Matrix::identity(2),
            Matrix::identity(2),
            Matrix::zeros(1, 3),
            Matrix::zeros(0, 2),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::ExternalCols {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn validate_accepts_guarantee_fixture() {
        let g = guarantees();
        assert_eq!(
            (g.state_dim(), g.driving_dim(), g.external_dim(), g.constraint_count()),
            (4, 4, 4, 1)
        );
    }

    #[test]
    fn unconstrained_system_is_fully_consistent() {
        let sys = DVSystem::new(
            mat![[0, 1], [0, 0]],
            Matrix::zeros(2, 0),
            Matrix::identity(2),
            Matrix::zeros(0, 2),
        )
        .unwrap();
        assert!(sys.consistent_subspace().is_full());
    }

    #[test]
    fn guarantee_consistent_subspace_is_constraint_kernel() {
        let g = guarantees();
        let v = g.consistent_subspace();
        assert_eq!(v.dim(), 3);
        assert!(v.equals(&Subspace::kernel(&g.h)));
    }

    #[test]
    fn consistent_state_membership() {
        let g = guarantees();
        assert!(g
            .is_consistent_state(&[int(0), int(0), int(0), int(0)])
            .unwrap());
        assert!(g
            .is_consistent_state(&[int(1), int(2), int(0), int(1)])
            .unwrap());
        assert!(!g
            .is_consistent_state(&[int(1), int(2), ratio(4, 5), int(1)])
            .unwrap());
        assert!(g.is_consistent_state(&[int(0)]).is_err());
    }

    /// With no driving variable the consistent subspace is the largest
    /// A-invariant subspace inside ker H, which equals the kernel of the
    /// stacked maps H, HA, ..., HA^(n-1). That stack is the independent
    /// oracle used here.
    fn stacked_kernel_oracle(sys: &DVSystem) -> Subspace {
        let n = sys.state_dim();
        let mut blocks = Vec::new();
        let mut power = Matrix::identity(n);
        for _ in 0..n {
            blocks.push(sys.h.mul(&power));
            power = power.mul(&sys.a);
        }
        let stacked = Matrix::vstack(&blocks.iter().collect::<Vec<_>>());
        Subspace::kernel(&stacked)
    }

    #[test]
    fn driverless_systems_match_stacked_kernel_oracle() {
        let cases = [
            (mat![[0, 1], [0, 0]], mat![[1, 0]]),
            (mat![[1, 0], [1, 1]], mat![[0, 1]]),
            (mat![[0, 1, 0], [0, 0, 1], [0, 0, 0]], mat![[1, 0, 0]]),
            (Matrix::identity(3), mat![[1, 1, 1], [0, 1, 0]]),
        ];
        for (a, h) in cases {
            let n = a.rows();
            let sys = DVSystem::new(
                a,
                Matrix::zeros(n, 0),
                Matrix::identity(n),
                h,
            )
            .unwrap();
            assert!(sys
                .consistent_subspace()
                .equals(&stacked_kernel_oracle(&sys)));
        }
    }

    #[test]
    fn iterates_decrease_and_stabilize_quickly() {
        let g = guarantees();
        let iterates = g.consistent_subspace_iterates();
        assert!(iterates.len() <= g.state_dim() + 2);
        for pair in iterates.windows(2) {
            assert!(pair[0].contains(&pair[1]));
        }
        let last = iterates.last().unwrap();
        let prev = &iterates[iterates.len() - 2];
        assert!(last.equals(prev));
    }

    #[test]
    fn fixed_point_satisfies_both_conditions() {
        let sys = DVSystem::new(
            mat![[0, 1, 0], [0, 0, 1], [1, 0, 0]],
            mat![[1], [0], [0]],
            Matrix::identity(3),
            mat![[0, 0, 1]],
        )
        .unwrap();
        let v = sys.consistent_subspace();
        let reach = v.sum(&Subspace::image(&sys.g));
        assert!(reach.contains(&v.apply(&sys.a)));
        assert!(Subspace::kernel(&sys.h).contains(&v));
    }
}
