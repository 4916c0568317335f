//! Errors shared by the exact verification modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state matrix A must be square, got {rows}x{cols}")]
    StateNotSquare { rows: usize, cols: usize },

    #[error("driving matrix G has {found} rows, expected {expected} (state dimension)")]
    DrivingRows { expected: usize, found: usize },

    #[error("external map C has {found} columns, expected {expected} (state dimension)")]
    ExternalCols { expected: usize, found: usize },

    #[error("constraint map H has {found} columns, expected {expected} (state dimension)")]
    ConstraintCols { expected: usize, found: usize },

    #[error("state vector has length {found}, expected {expected}")]
    StateLength { expected: usize, found: usize },

    #[error("external dimension mismatch: left system has {left}, right has {right}")]
    ExternalDimMismatch { left: usize, right: usize },

    #[error("relation dimension mismatch: {context} (expected {expected}, found {found})")]
    RelationDim {
        context: &'static str,
        expected: usize,
        found: usize,
    },
}
