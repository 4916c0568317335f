//! Assume/guarantee contracts over driving-variable systems.
//!
//! A contract pairs two systems on one external-variable space: the
//! assumptions bound the environments the implementation must tolerate, the
//! guarantees bound the closed-loop behavior it must deliver. Implementation
//! reduces to a single simulation check against the composition with the
//! assumptions, and refinement compares contracts leg by leg.

use crate::compose::compose;
use crate::error::Error;
use crate::simulation::{simulates, SimulationVerdict};
use crate::system::DVSystem;

/// A specification: assumptions and guarantees sharing one external space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Contract {
    assumptions: DVSystem,
    guarantees: DVSystem,
}

impl Contract {
    pub fn new(assumptions: DVSystem, guarantees: DVSystem) -> Result<Self, Error> {
        if assumptions.external_dim() != guarantees.external_dim() {
            return Err(Error::ExternalDimMismatch {
                left: assumptions.external_dim(),
                right: guarantees.external_dim(),
            });
        }
        Ok(Contract {
            assumptions,
            guarantees,
        })
    }

    pub fn assumptions(&self) -> &DVSystem {
        &self.assumptions
    }

    pub fn guarantees(&self) -> &DVSystem {
        &self.guarantees
    }
}

/// An environment is compatible when the assumptions simulate it.
pub fn is_compatible_environment(
    env: &DVSystem,
    contract: &Contract,
) -> Result<SimulationVerdict, Error> {
    simulates(env, &contract.assumptions)
}

/// A system implements the contract iff its composition with the
/// assumptions is simulated by the guarantees. Checking against the
/// assumptions alone suffices: they are themselves a compatible
/// environment, and any other compatible environment composes into
/// something the assumption composition simulates.
pub fn implements(sigma: &DVSystem, contract: &Contract) -> Result<SimulationVerdict, Error> {
    let closed = compose(&contract.assumptions, sigma)?;
    simulates(&closed, &contract.guarantees)
}

/// Outcome of a refinement check, with the two legs kept separate so a
/// failure is attributable to the environment side or the guarantee side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RefinementVerdict {
    pub holds: bool,
    /// `assumptions(c) ≼ assumptions(c')`: the refinement admits at least
    /// the environments of the refined contract.
    pub env_part: SimulationVerdict,
    /// `assumptions(c) ∘ guarantees(c') ≼ guarantees(c)`: under the original
    /// assumptions the new guarantees are at least as tight.
    pub guar_part: SimulationVerdict,
}

/// Checks whether `cprime` refines `c`.
pub fn refines(cprime: &Contract, c: &Contract) -> Result<RefinementVerdict, Error> {
    let env_part = simulates(&c.assumptions, &cprime.assumptions)?;
    let closed = compose(&c.assumptions, &cprime.guarantees)?;
    let guar_part = simulates(&closed, &c.guarantees)?;
    Ok(RefinementVerdict {
        holds: env_part.holds && guar_part.holds,
        env_part,
        guar_part,
    })
}

/// Replaces the guarantees by their composition with the assumptions. The
/// implementation set is unchanged, so saturating is always admissible.
pub fn saturate(contract: &Contract) -> Contract {
    let saturated = compose(&contract.assumptions, &contract.guarantees)
        .expect("contract invariant guarantees matching external dimensions");
    Contract {
        assumptions: contract.assumptions.clone(),
        guarantees: saturated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;
    use crate::matrix::Matrix;
    use crate::simulation::FailureReason;

    fn assumptions() -> DVSystem {
        // First block obeys the kinematic relation; second block is free.
        DVSystem::new(
            mat![[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
            mat![[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
            Matrix::identity(4),
            Matrix::zeros(0, 4),
        )
        .unwrap()
    }

    fn guarantees() -> DVSystem {
        DVSystem::new(
            Matrix::identity(4),
            Matrix::identity(4),
            Matrix::identity(4),
            mat![[-1, 0, 1, 1]],
        )
        .unwrap()
    }

    fn spacing_contract() -> Contract {
        Contract::new(assumptions(), guarantees()).unwrap()
    }

    #[test]
    fn assumptions_are_their_own_compatible_environment() {
        let c = spacing_contract();
        let verdict = is_compatible_environment(&c.assumptions, &c).unwrap();
        assert!(verdict.holds);
    }

    #[test]
    fn narrowed_environment_stays_compatible() {
        // One extra constraint row only shrinks the environment's behavior.
        let base = DVSystem::new(
            mat![[0, 0], [0, 0]],
            mat![[1, 0], [0, 1]],
            mat![[1, 0], [0, 1]],
            Matrix::zeros(0, 2),
        )
        .unwrap();
        let narrowed = DVSystem::new(
            base.a.clone(),
            base.g.clone(),
            base.c.clone(),
            mat![[1, -1]],
        )
        .unwrap();
        let c = Contract::new(base.clone(), base.clone()).unwrap();
        assert!(is_compatible_environment(&narrowed, &c).unwrap().holds);
    }

    #[test]
    fn guarantee_system_implements_free_contract() {
        let free = DVSystem::new(
            Matrix::zeros(4, 4),
            Matrix::identity(4),
            Matrix::identity(4),
            Matrix::zeros(0, 4),
        )
        .unwrap();
        let c = Contract::new(free, guarantees()).unwrap();
        assert!(implements(&guarantees(), &c).unwrap().holds);
    }

    #[test]
    fn refinement_is_reflexive() {
        let c = spacing_contract();
        let verdict = refines(&c, &c).unwrap();
        assert!(verdict.holds);
        assert!(verdict.env_part.holds);
        assert!(verdict.guar_part.holds);
    }

    #[test]
    fn dropping_an_assumption_row_enlarges_environments() {
        let tight = DVSystem::new(
            mat![[0]],
            mat![[1]],
            mat![[1]],
            mat![[1]],
        )
        .unwrap();
        let loose = DVSystem::new(mat![[0]], mat![[1]], mat![[1]], Matrix::zeros(0, 1)).unwrap();
        let g = loose.clone();
        let c = Contract::new(tight, g.clone()).unwrap();
        let cprime = Contract::new(loose, g).unwrap();
        let verdict = refines(&cprime, &c).unwrap();
        assert!(verdict.env_part.holds);
    }

    #[test]
    fn saturation_stacks_state_dimensions() {
        let c = spacing_contract();
        let sat = saturate(&c);
        assert_eq!(
            sat.guarantees().state_dim(),
            c.assumptions().state_dim() + c.guarantees().state_dim()
        );
        assert_eq!(sat.assumptions(), c.assumptions());
    }

    #[test]
    fn saturation_preserves_implementation_verdicts() {
        let c = spacing_contract();
        let sat = saturate(&c);
        let sigma = guarantees();
        let before = implements(&sigma, &c).unwrap();
        let after = implements(&sigma, &sat).unwrap();
        assert_eq!(before.holds, after.holds);
    }

    #[test]
    fn mismatched_external_dims_rejected() {
        let small = DVSystem::new(mat![[0]], mat![[1]], mat![[1]], Matrix::zeros(0, 1)).unwrap();
        let wide = DVSystem::new(
            mat![[0]],
            mat![[1]],
            mat![[1], [1]],
            Matrix::zeros(0, 1),
        )
        .unwrap();
        assert!(matches!(
            Contract::new(small, wide),
            Err(Error::ExternalDimMismatch { .. })
        ));
    }

    #[test]
    fn unimplementable_contract_reports_reason() {
        // Guarantees pinned to the zero state leave every forced driving
        // direction of the free composition unanswered.
        let free = DVSystem::new(mat![[0]], mat![[1]], mat![[1]], Matrix::zeros(0, 1)).unwrap();
        let pinned = DVSystem::new(mat![[0]], mat![[1]], mat![[1]], Matrix::identity(1)).unwrap();
        let c = Contract::new(free.clone(), pinned).unwrap();
        let verdict = implements(&free, &c).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.failure_reason, Some(FailureReason::DrivingCondition));
    }
}
