//! contractkit: verification toolkit for linear dynamical systems in
//! driving-variable form.
//!
//! The crate decides the simulation preorder between systems, checks
//! assume/guarantee contract implementation and refinement, and validates
//! those verdicts against numerically integrated trajectories.
//!
//! All verification runs over exact rationals, so rank and inclusion
//! decisions are never tolerance-dependent. The layers, bottom up:
//!
//! * [`scalar`], [`matrix`], [`subspace`] — exact linear algebra and the
//!   subspace lattice (kernel, image, sum, intersection, preimage,
//!   projection).
//! * [`system`] — the system class `x' = Ax + Gd`, `w = Cx`, `0 = Hx` and
//!   its consistent subspace.
//! * [`compose`] — interconnection by external-variable sharing.
//! * [`simulation`] — simulation relations, the invariant subspace
//!   iteration, and witness constructions.
//! * [`contract`] — assume/guarantee contracts: compatibility,
//!   implementation, refinement, saturation.
//! * [`trajectory`] — fixed-step RK4 runs of the vehicle-following
//!   experiment, as floating-point evidence for the exact verdicts.
//! * [`doc`] — the JSON file format used by the CLI.

pub mod compose;
pub mod contract;
pub mod doc;
pub mod error;
pub mod matrix;
pub mod scalar;
pub mod simulation;
pub mod subspace;
pub mod system;
pub mod trajectory;

pub use compose::{compose, composed_consistent_subspace};
pub use contract::{implements, is_compatible_environment, refines, saturate, Contract};
pub use error::Error;
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use simulation::{
    check_relation, composition_upper_witness, infimum_witness, largest_simulation_relation,
    simulates, transitive_witness, CompositionSide, FailureReason, SimulationRelation,
    SimulationVerdict,
};
pub use subspace::Subspace;
pub use system::DVSystem;
