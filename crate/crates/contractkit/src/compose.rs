//! Interconnection of two systems by sharing their external variable.
//!
//! The composed system runs both subsystems side by side and pins their
//! external variables together through an added constraint row block
//! `[C1  -C2]`; the composed external map averages the two (now equal)
//! readouts.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::ratio;
use crate::subspace::Subspace;
use crate::system::DVSystem;

/// Variable-sharing composition. State and driving spaces stack as
/// (left block, right block); the constraint rows are the originals of both
/// systems followed by the sharing rows `C1 x1 - C2 x2 = 0`.
pub fn compose(s1: &DVSystem, s2: &DVSystem) -> Result<DVSystem, Error> {
    if s1.external_dim() != s2.external_dim() {
        return Err(Error::ExternalDimMismatch {
            left: s1.external_dim(),
            right: s2.external_dim(),
        });
    }
    let (n1, n2) = (s1.state_dim(), s2.state_dim());
    let a = Matrix::block_diag(&[&s1.a, &s2.a]);
    let g = Matrix::block_diag(&[&s1.g, &s2.g]);
    let c = Matrix::hstack(&[&s1.c, &s2.c]).scale(&ratio(1, 2));
    let h = Matrix::vstack(&[
        &Matrix::hstack(&[&s1.h, &Matrix::zeros(s1.constraint_count(), n2)]),
        &Matrix::hstack(&[&Matrix::zeros(s2.constraint_count(), n1), &s2.h]),
        &Matrix::hstack(&[&s1.c, &s2.c.neg()]),
    ]);
    let composed = DVSystem::new(a, g, c, h)?;
    Ok(match (&s1.name, &s2.name) {
        (Some(l), Some(r)) => composed.with_name(format!("{l}∘{r}")),
        _ => composed,
    })
}

/// Consistent subspace of the composition; not expressible in terms of the
/// component subspaces, so it is computed on the composed realization.
pub fn composed_consistent_subspace(s1: &DVSystem, s2: &DVSystem) -> Result<Subspace, Error> {
    Ok(compose(s1, s2)?.consistent_subspace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;

    fn unit_system() -> DVSystem {
        DVSystem::new(mat![[1]], mat![[1]], mat![[1]], Matrix::zeros(0, 1)).unwrap()
    }

    #[test]
    fn composes_two_scalar_systems() {
        let s = unit_system();
        let comp = compose(&s, &s).unwrap();
        assert_eq!(comp.state_dim(), 2);
        assert_eq!(comp.a, mat![[1, 0], [0, 1]]);
        assert_eq!(comp.g, mat![[1, 0], [0, 1]]);
        assert_eq!(comp.h, mat![[1, -1]]);
        assert_eq!(comp.c.row(0)[0], ratio(1, 2));
        assert_eq!(comp.c.row(0)[1], ratio(1, 2));
    }

    #[test]
    fn rejects_external_dim_mismatch() {
        let s1 = unit_system();
        let s2 = DVSystem::new(
            mat![[1]],
            mat![[1]],
            mat![[1], [0]],
            Matrix::zeros(0, 1),
        )
        .unwrap();
        assert_eq!(
            compose(&s1, &s2).unwrap_err(),
            Error::ExternalDimMismatch { left: 1, right: 2 }
        );
    }

    #[test]
    fn zero_output_maps_share_trivially() {
        let free = DVSystem::new(
            mat![[0]],
            mat![[1]],
            Matrix::zeros(2, 1),
            Matrix::zeros(0, 1),
        )
        .unwrap();
        let v = composed_consistent_subspace(&free, &free).unwrap();
        assert!(v.is_full());
        assert_eq!(v.ambient_dim(), 2);
    }

    #[test]
    fn identical_guarantees_compose_to_their_diagonal() {
        let g = DVSystem::new(
            Matrix::identity(4),
            Matrix::identity(4),
            Matrix::identity(4),
            mat![[-1, 0, 1, 1]],
        )
        .unwrap();
        let v = composed_consistent_subspace(&g, &g).unwrap();
        assert_eq!(v.dim(), 3);
        // Every basis vector is a pair (x, x) with x in ker H.
        let ker = Subspace::kernel(&g.h);
        for col in v.basis().columns() {
            let (x, y) = col.split_at(4);
            assert_eq!(x, y);
            assert!(ker.contains_vector(x));
        }
    }

    #[test]
    fn component_projections_stay_consistent() {
        let s1 = DVSystem::new(
            mat![[0, 1], [0, 0]],
            mat![[0], [1]],
            mat![[1, 0]],
            mat![[1, -1]],
        )
        .unwrap();
        let s2 = DVSystem::new(mat![[2]], Matrix::zeros(1, 0), mat![[1]], Matrix::zeros(0, 1))
            .unwrap();
        let v = composed_consistent_subspace(&s1, &s2).unwrap();
        let n1 = s1.state_dim();
        assert!(s1.consistent_subspace().contains(&v.project(0..n1)));
        assert!(s2
            .consistent_subspace()
            .contains(&v.project(n1..n1 + s2.state_dim())));
    }
}
