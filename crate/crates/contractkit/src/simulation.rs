//! The simulation preorder on driving-variable systems.
//!
//! A simulation relation of `S1` by `S2` is a subspace of the product state
//! space whose members can move in lockstep: every constrained move of the
//! left system is matched by a move of the right system with equal external
//! output. Trajectory-level matching is equivalent to three algebraic
//! conditions, checked here exactly:
//!
//!   * state condition: `blockdiag(A1,A2) S ⊆ S + im blockdiag(G1,G2)`
//!   * driving condition: `[im G1 ∩ V1*; 0] ⊆ S + [0; im G2 ∩ V2*]`
//!   * output condition: `S ⊆ ker [H1 0; 0 H2; C1 -C2]`
//!
//! `S1 ≼ S2` additionally needs a relation that is *full*: its left
//! projection covers the whole consistent subspace of `S1`. It suffices to
//! test the driving condition and fullness on the largest subspace
//! satisfying the state and output conditions, which the invariant subspace
//! iteration computes; both checks only become easier as the relation
//! grows, and every simulation relation is contained in that largest one.

use std::fmt;

use crate::compose::composed_consistent_subspace;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use crate::system::{invariant_fixpoint_iterates, DVSystem};

/// A candidate simulation relation: a subspace of the product of the two
/// state spaces, tagged with the block split.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimulationRelation {
    left_dim: usize,
    right_dim: usize,
    relation: Subspace,
}

impl SimulationRelation {
    pub fn new(left_dim: usize, right_dim: usize, relation: Subspace) -> Result<Self, Error> {
        if relation.ambient_dim() != left_dim + right_dim {
            return Err(Error::RelationDim {
                context: "relation ambient dimension",
                expected: left_dim + right_dim,
                found: relation.ambient_dim(),
            });
        }
        Ok(SimulationRelation {
            left_dim,
            right_dim,
            relation,
        })
    }

    /// The diagonal `{(x, x) | x in v}`, the canonical witness for a system
    /// simulating itself.
    pub fn diagonal(v: &Subspace) -> Self {
        let b = v.basis();
        let relation = Subspace::from_columns(&Matrix::vstack(&[b, b]));
        SimulationRelation {
            left_dim: v.ambient_dim(),
            right_dim: v.ambient_dim(),
            relation,
        }
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn relation(&self) -> &Subspace {
        &self.relation
    }

    pub fn dim(&self) -> usize {
        self.relation.dim()
    }

    pub fn left_projection(&self) -> Subspace {
        self.relation.project(0..self.left_dim)
    }

    pub fn right_projection(&self) -> Subspace {
        self.relation.project(self.left_dim..self.left_dim + self.right_dim)
    }
}

/// Why a candidate relation fails to certify `S1 ≼ S2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FailureReason {
    /// The relation is not invariant under the paired dynamics.
    StateCondition,
    /// Some constrained driving of the left system cannot be answered.
    DrivingCondition,
    /// The relation does not force equal external variables (or violates a
    /// constraint row).
    OutputCondition,
    /// Valid simulation relation, but its left projection misses part of
    /// the left consistent subspace.
    NotFull,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureReason::StateCondition => "StateCondition",
            FailureReason::DrivingCondition => "DrivingCondition",
            FailureReason::OutputCondition => "OutputCondition",
            FailureReason::NotFull => "NotFull",
        };
        f.write_str(s)
    }
}

/// Outcome of a simulation check. `holds` is true exactly when `witness` is
/// present and full; a verdict may carry a witness that is a valid but
/// non-full simulation relation (reason `NotFull`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimulationVerdict {
    pub holds: bool,
    pub witness: Option<SimulationRelation>,
    pub failure_reason: Option<FailureReason>,
}

impl SimulationVerdict {
    fn pass(witness: SimulationRelation) -> Self {
        SimulationVerdict {
            holds: true,
            witness: Some(witness),
            failure_reason: None,
        }
    }

    fn fail(witness: Option<SimulationRelation>, reason: FailureReason) -> Self {
        SimulationVerdict {
            holds: false,
            witness,
            failure_reason: Some(reason),
        }
    }
}

/// `[H1 0; 0 H2; C1 -C2]` on the product state space: the constraint rows
/// of both systems plus the external-variable sharing rows. Its kernel is
/// the output condition and the starting point of the relation iteration.
fn pair_constraints(s1: &DVSystem, s2: &DVSystem) -> Matrix {
    let (n1, n2) = (s1.state_dim(), s2.state_dim());
    Matrix::vstack(&[
        &Matrix::hstack(&[&s1.h, &Matrix::zeros(s1.constraint_count(), n2)]),
        &Matrix::hstack(&[&Matrix::zeros(s2.constraint_count(), n1), &s2.h]),
        &Matrix::hstack(&[&s1.c, &s2.c.neg()]),
    ])
}

/// Embeds a subspace of one block into the product space, zero elsewhere.
fn embed(v: &Subspace, total: usize, offset: usize) -> Subspace {
    let mut m = Matrix::zeros(total, v.dim());
    let b = v.basis();
    for i in 0..v.ambient_dim() {
        for j in 0..v.dim() {
            m[(offset + i, j)] = b[(i, j)].clone();
        }
    }
    Subspace::from_columns(&m)
}

fn check_pair_dims(rel: &SimulationRelation, s1: &DVSystem, s2: &DVSystem) -> Result<(), Error> {
    if rel.left_dim != s1.state_dim() {
        return Err(Error::RelationDim {
            context: "left block of the relation",
            expected: s1.state_dim(),
            found: rel.left_dim,
        });
    }
    if rel.right_dim != s2.state_dim() {
        return Err(Error::RelationDim {
            context: "right block of the relation",
            expected: s2.state_dim(),
            found: rel.right_dim,
        });
    }
    if s1.external_dim() != s2.external_dim() {
        return Err(Error::ExternalDimMismatch {
            left: s1.external_dim(),
            right: s2.external_dim(),
        });
    }
    Ok(())
}

/// Verifies whether `rel` is a (full) simulation relation of `s1` by `s2`,
/// reporting the first violated condition in the order output, state,
/// driving, fullness.
///
/// The projection preconditions (each block projection inside the
/// respective consistent subspace) are implied by the output and state
/// conditions together, so they never need a separate check: once those two
/// pass, each projection satisfies the defining inclusions of the
/// consistent subspace and is contained in it by maximality.
pub fn check_relation(
    rel: &SimulationRelation,
    s1: &DVSystem,
    s2: &DVSystem,
) -> Result<SimulationVerdict, Error> {
    check_pair_dims(rel, s1, s2)?;
    let s = &rel.relation;

    let output_kernel = Subspace::kernel(&pair_constraints(s1, s2));
    if !output_kernel.contains(s) {
        return Ok(SimulationVerdict::fail(None, FailureReason::OutputCondition));
    }

    let paired_a = Matrix::block_diag(&[&s1.a, &s2.a]);
    let paired_g_image = Subspace::image(&Matrix::block_diag(&[&s1.g, &s2.g]));
    if !s.sum(&paired_g_image).contains(&s.apply(&paired_a)) {
        return Ok(SimulationVerdict::fail(None, FailureReason::StateCondition));
    }

    let v1 = s1.consistent_subspace();
    let v2 = s2.consistent_subspace();
    let total = rel.left_dim + rel.right_dim;
    let forced = embed(&Subspace::image(&s1.g).intersect(&v1), total, 0);
    let answers = embed(
        &Subspace::image(&s2.g).intersect(&v2),
        total,
        rel.left_dim,
    );
    if !s.sum(&answers).contains(&forced) {
        return Ok(SimulationVerdict::fail(
            Some(rel.clone()),
            FailureReason::DrivingCondition,
        ));
    }

    if !rel.left_projection().equals(&v1) {
        return Ok(SimulationVerdict::fail(
            Some(rel.clone()),
            FailureReason::NotFull,
        ));
    }
    Ok(SimulationVerdict::pass(rel.clone()))
}

/// The largest subspace satisfying the state and output conditions,
/// computed by the invariant subspace iteration on the product system:
/// start from the kernel of the pair constraints and shrink with
/// `S ↦ S ∩ A⁻¹(S + im G)` for the block-diagonal maps. Every simulation
/// relation of `s1` by `s2` is contained in the result.
pub fn largest_simulation_relation(
    s1: &DVSystem,
    s2: &DVSystem,
) -> Result<SimulationRelation, Error> {
    if s1.external_dim() != s2.external_dim() {
        return Err(Error::ExternalDimMismatch {
            left: s1.external_dim(),
            right: s2.external_dim(),
        });
    }
    let constraint = Subspace::kernel(&pair_constraints(s1, s2));
    let paired_a = Matrix::block_diag(&[&s1.a, &s2.a]);
    let paired_g_image = Subspace::image(&Matrix::block_diag(&[&s1.g, &s2.g]));
    let iterates = invariant_fixpoint_iterates(&constraint, &paired_a, &paired_g_image);
    let relation = iterates.last().unwrap().clone();
    SimulationRelation::new(s1.state_dim(), s2.state_dim(), relation)
}

/// Decides `s1 ≼ s2`. Computes the largest candidate relation, then tests
/// the driving condition and fullness on it; both are monotone in the
/// relation, so the largest candidate passes them iff some full simulation
/// relation exists. The witness is returned even on failure so callers can
/// inspect how far the relation reaches.
pub fn simulates(s1: &DVSystem, s2: &DVSystem) -> Result<SimulationVerdict, Error> {
    let largest = largest_simulation_relation(s1, s2)?;
    let s = &largest.relation;
    let v1 = s1.consistent_subspace();
    let v2 = s2.consistent_subspace();
    let total = largest.left_dim + largest.right_dim;

    let forced = embed(&Subspace::image(&s1.g).intersect(&v1), total, 0);
    let answers = embed(
        &Subspace::image(&s2.g).intersect(&v2),
        total,
        largest.left_dim,
    );
    if !s.sum(&answers).contains(&forced) {
        return Ok(SimulationVerdict::fail(
            Some(largest),
            FailureReason::DrivingCondition,
        ));
    }
    if !largest.left_projection().equals(&v1) {
        return Ok(SimulationVerdict::fail(Some(largest), FailureReason::NotFull));
    }
    Ok(SimulationVerdict::pass(largest))
}

/// Chains two relations: `{(x1, x3) | ∃x2 : (x1,x2) ∈ s12, (x2,x3) ∈ s23}`,
/// computed by intersecting the two cylinders over the middle factor and
/// projecting the middle block away. Certifies transitivity when both
/// inputs are full simulation relations; callers re-verify with
/// [`check_relation`].
pub fn transitive_witness(
    s12: &SimulationRelation,
    s23: &SimulationRelation,
) -> Result<SimulationRelation, Error> {
    if s12.right_dim != s23.left_dim {
        return Err(Error::RelationDim {
            context: "middle state space of the chained relations",
            expected: s12.right_dim,
            found: s23.left_dim,
        });
    }
    let (n1, n2, n3) = (s12.left_dim, s12.right_dim, s23.right_dim);
    let lifted_12 = Subspace::from_columns(&Matrix::block_diag(&[
        s12.relation.basis(),
        &Matrix::identity(n3),
    ]));
    let lifted_23 = Subspace::from_columns(&Matrix::block_diag(&[
        &Matrix::identity(n1),
        s23.relation.basis(),
    ]));
    let chained = lifted_12.intersect(&lifted_23);
    let outer: Vec<usize> = (0..n1).chain(n1 + n2..n1 + n2 + n3).collect();
    SimulationRelation::new(n1, n3, chained.project_coords(&outer))
}

/// Which component of a composition the witness projects onto.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompositionSide {
    Left,
    Right,
}

/// The explicit relation certifying `compose(s1, s2) ≼ s_side`: pairs of a
/// composed state in the composed consistent subspace with the copy of its
/// selected block. Passes [`check_relation`] and is full by construction.
pub fn composition_upper_witness(
    s1: &DVSystem,
    s2: &DVSystem,
    side: CompositionSide,
) -> Result<SimulationRelation, Error> {
    let v_comp = composed_consistent_subspace(s1, s2)?;
    let (n1, n2) = (s1.state_dim(), s2.state_dim());
    let rows: Vec<usize> = match side {
        CompositionSide::Left => (0..n1).collect(),
        CompositionSide::Right => (n1..n1 + n2).collect(),
    };
    let b = v_comp.basis();
    let copied = b.select_rows(&rows);
    let relation = Subspace::from_columns(&Matrix::vstack(&[b, &copied]));
    SimulationRelation::new(n1 + n2, rows.len(), relation)
}

/// Builds `{(x, (x1, x2)) | (x, x1) ∈ sa, (x, x2) ∈ sb}`; when `sa` and
/// `sb` are full simulation relations of a common system by `s1` and `s2`,
/// this certifies that the common system is simulated by `compose(s1, s2)`.
pub fn infimum_witness(
    sa: &SimulationRelation,
    sb: &SimulationRelation,
) -> Result<SimulationRelation, Error> {
    if sa.left_dim != sb.left_dim {
        return Err(Error::RelationDim {
            context: "shared left state space of the witnesses",
            expected: sa.left_dim,
            found: sb.left_dim,
        });
    }
    let (n, n1, n2) = (sa.left_dim, sa.right_dim, sb.right_dim);
    let lifted_a = Subspace::from_columns(&Matrix::block_diag(&[
        sa.relation.basis(),
        &Matrix::identity(n2),
    ]));
    // sb pairs the first and third blocks; its cylinder frees the middle.
    let bb = sb.relation.basis();
    let shared = bb.select_rows(&(0..n).collect::<Vec<_>>());
    let right = bb.select_rows(&(n..n + n2).collect::<Vec<_>>());
    let through = Matrix::vstack(&[&shared, &Matrix::zeros(n1, bb.cols()), &right]);
    let free_middle = Matrix::vstack(&[
        &Matrix::zeros(n, n1),
        &Matrix::identity(n1),
        &Matrix::zeros(n2, n1),
    ]);
    let lifted_b = Subspace::from_columns(&Matrix::hstack(&[&through, &free_middle]));
    SimulationRelation::new(n, n1 + n2, lifted_a.intersect(&lifted_b))
}
