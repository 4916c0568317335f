//! Shared helpers for the integration suites: fixture loading and the
//! random-system generator used by the property checks.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::Rng;

use contractkit::doc::load_system;
use contractkit::matrix::Matrix;
use contractkit::subspace::Subspace;
use contractkit::system::DVSystem;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_system(name: &str) -> DVSystem {
    load_system(&fixture_dir().join(name)).expect("fixture should parse")
}

/// Uniform integer entries in [-2, 2]; small values keep exact arithmetic
/// fast and produce degenerate ranks often.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    if rows == 0 || cols == 0 {
        return Matrix::zeros(rows, cols);
    }
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(-2..=2)).collect())
        .collect();
    Matrix::from_int_rows(&data)
}

/// Random system with up to `max_state` states, external dimension
/// `external`, driving dimension up to the state count, and up to two
/// constraint rows added with probability one half each.
pub fn random_system(rng: &mut impl Rng, max_state: usize, external: usize) -> DVSystem {
    let n = rng.random_range(1..=max_state);
    let m = rng.random_range(0..=n);
    let a = random_matrix(rng, n, n);
    let g = random_matrix(rng, n, m);
    let c = random_matrix(rng, external, n);
    let h_rows = (0..2).filter(|_| rng.random_bool(0.5)).count();
    let h = random_matrix(rng, h_rows, n);
    DVSystem::new(a, g, c, h).expect("generated dimensions are coherent")
}

/// Loosens a system without changing its dynamics or output map: drops each
/// constraint row with probability one half and appends a random driving
/// column. The original system is always simulated by the result (the
/// diagonal over its consistent subspace is a full simulation relation).
pub fn relax(rng: &mut impl Rng, sys: &DVSystem) -> DVSystem {
    let n = sys.state_dim();
    let kept: Vec<usize> =
        (0..sys.constraint_count()).filter(|_| rng.random_bool(0.5)).collect();
    let h = sys.h.select_rows(&kept);
    let extra = random_matrix(rng, n, 1);
    let g = Matrix::hstack(&[&sys.g, &extra]);
    DVSystem::new(sys.a.clone(), g, sys.c.clone(), h).unwrap()
}

/// Tightens a system by appending a random constraint row; the result is
/// always simulated by the original.
pub fn constrain(rng: &mut impl Rng, sys: &DVSystem) -> DVSystem {
    let n = sys.state_dim();
    let extra = random_matrix(rng, 1, n);
    let h = Matrix::vstack(&[&sys.h, &extra]);
    DVSystem::new(sys.a.clone(), sys.g.clone(), sys.c.clone(), h).unwrap()
}

/// With no driving variable, the consistent subspace is the unobservable
/// part of (H, A): the kernel of the stacked maps H, HA, ..., HA^(n-1).
/// Independent of the fixed-point implementation.
pub fn stacked_kernel_oracle(sys: &DVSystem) -> Subspace {
    let n = sys.state_dim();
    let mut blocks = Vec::new();
    let mut power = Matrix::identity(n);
    for _ in 0..n {
        blocks.push(sys.h.mul(&power));
        power = power.mul(&sys.a);
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Subspace::kernel(&Matrix::vstack(&refs))
}

/// The diagonal subspace `{(x, x)}` of the doubled space.
pub fn diagonal_subspace(n: usize) -> Subspace {
    let eye = Matrix::identity(n);
    Subspace::from_columns(&Matrix::vstack(&[&eye, &eye]))
}
