//! Fixed-step numerical integration of driven linear systems.
//!
//! Everything here runs in binary64 floating point: trajectories are
//! evidence that a verdict from the exact modules shows up in sampled
//! behavior, never the verdict itself. The integrator is classical
//! fourth-order Runge-Kutta on a uniform grid, deterministic down to the
//! bit for identical inputs.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrajectoryError {
    #[error("vehicle parameters must be positive: h={headway}, k={gain}, c={drag}")]
    InvalidParams { headway: f64, gain: f64, drag: f64 },

    #[error("dimension mismatch: {context} has length {found}, expected {expected}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("step size must be positive, got {0}")]
    NonpositiveStep(f64),
}

/// One segment of a driving signal: a constant level, or a constant plus a
/// unit sine phased to start at the segment boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Constant(f64),
    /// `offset + sin(t - t0)`.
    OffsetSine { offset: f64, t0: f64 },
}

impl Piece {
    fn eval(&self, t: f64) -> f64 {
        match *self {
            Piece::Constant(c) => c,
            Piece::OffsetSine { offset, t0 } => offset + (t - t0).sin(),
        }
    }
}

/// Piecewise driving signal. Pieces are (start time, expression) pairs in
/// increasing start order; each piece applies on the right-open interval up
/// to the next start.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivingSignal {
    pieces: Vec<(f64, Piece)>,
}

impl DrivingSignal {
    pub fn new(pieces: Vec<(f64, Piece)>) -> Self {
        assert!(!pieces.is_empty(), "driving signal needs at least one piece");
        assert!(
            pieces.windows(2).all(|w| w[0].0 < w[1].0),
            "piece start times must increase"
        );
        DrivingSignal { pieces }
    }

    pub fn constant(level: f64) -> Self {
        DrivingSignal::new(vec![(0.0, Piece::Constant(level))])
    }

    pub fn zero() -> Self {
        DrivingSignal::constant(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut active = &self.pieces[0].1;
        for (start, piece) in &self.pieces {
            if t >= *start {
                active = piece;
            } else {
                break;
            }
        }
        active.eval(t)
    }
}

/// The disturbance profile used by the vehicle experiment: a unit step for
/// the first five seconds, then `1 + sin(t - 5)`.
pub fn default_disturbance() -> DrivingSignal {
    DrivingSignal::new(vec![
        (0.0, Piece::Constant(1.0)),
        (
            5.0,
            Piece::OffsetSine {
                offset: 1.0,
                t0: 5.0,
            },
        ),
    ])
}

/// Sampled state history on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub dt: f64,
}

/// Two-vehicle spacing-policy parameters: headway time `h`, controller gain
/// `k`, and lead-vehicle drag `c`, all strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleParams {
    pub headway: f64,
    pub gain: f64,
    pub drag: f64,
}

impl VehicleParams {
    pub fn new(headway: f64, gain: f64, drag: f64) -> Result<Self, TrajectoryError> {
        if !(headway > 0.0 && gain > 0.0 && drag > 0.0) {
            return Err(TrajectoryError::InvalidParams {
                headway,
                gain,
                drag,
            });
        }
        Ok(VehicleParams {
            headway,
            gain,
            drag,
        })
    }
}

impl Default for VehicleParams {
    fn default() -> Self {
        VehicleParams {
            headway: 1.0,
            gain: 0.25,
            drag: 0.5,
        }
    }
}

/// Closed-loop two-vehicle model in state order `(s1, v1, s2, v2)`:
///
/// ```text
///   s1' = v1
///   v1' = -c v1 + d1
///   s2' = v2
///   v2' = (v1 - v2)/h + k (s1 - s2 - h v2)/h
/// ```
///
/// Returns the state matrix and the column injecting the disturbance `d1`
/// into `v1'`.
pub fn vehicle_closed_loop(params: &VehicleParams) -> (Vec<Vec<f64>>, Vec<f64>) {
    let (h, k, c) = (params.headway, params.gain, params.drag);
    let a = vec![
        vec![0.0, 1.0, 0.0, 0.0],
        vec![0.0, -c, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
        vec![k / h, 1.0 / h, -k / h, -k - 1.0 / h],
    ];
    let inject = vec![0.0, 1.0, 0.0, 0.0];
    (a, inject)
}

/// Classical RK4 for `x' = A x + inject * d(t)` on the uniform grid
/// `0, dt, ..., t_end` (the end point is included when it lands on the
/// grid within rounding).
pub fn integrate(
    a: &[Vec<f64>],
    inject: &[f64],
    d: &DrivingSignal,
    x0: &[f64],
    dt: f64,
    t_end: f64,
) -> Result<Trajectory, TrajectoryError> {
    let n = x0.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(TrajectoryError::DimensionMismatch {
            context: "state matrix",
            expected: n,
            found: a.len(),
        });
    }
    if inject.len() != n {
        return Err(TrajectoryError::DimensionMismatch {
            context: "injection column",
            expected: n,
            found: inject.len(),
        });
    }
    if !(dt > 0.0) {
        return Err(TrajectoryError::NonpositiveStep(dt));
    }

    let steps = (t_end / dt).round() as usize;
    let deriv = |t: f64, x: &[f64]| -> Vec<f64> {
        let dval = d.eval(t);
        (0..n)
            .map(|i| {
                a[i].iter().zip(x).map(|(aij, xj)| aij * xj).sum::<f64>() + inject[i] * dval
            })
            .collect()
    };

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = x0.to_vec();
    times.push(0.0);
    states.push(x.clone());
    for step in 0..steps {
        let t = step as f64 * dt;
        let k1 = deriv(t, &x);
        let x2: Vec<f64> = x.iter().zip(&k1).map(|(xi, k)| xi + 0.5 * dt * k).collect();
        let k2 = deriv(t + 0.5 * dt, &x2);
        let x3: Vec<f64> = x.iter().zip(&k2).map(|(xi, k)| xi + 0.5 * dt * k).collect();
        let k3 = deriv(t + 0.5 * dt, &x3);
        let x4: Vec<f64> = x.iter().zip(&k3).map(|(xi, k)| xi + dt * k).collect();
        let k4 = deriv(t + dt, &x4);
        for i in 0..n {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        times.push((step + 1) as f64 * dt);
        states.push(x.clone());
    }
    Ok(Trajectory { times, states, dt })
}

/// Spacing error `e = -s1 + s2 + h v2` per sample, the constraint row of
/// the spacing policy applied along the trajectory.
pub fn spacing_error(traj: &Trajectory, headway: f64) -> Result<Vec<f64>, TrajectoryError> {
    let bad = traj.states.iter().find(|x| x.len() != 4);
    if let Some(x) = bad {
        return Err(TrajectoryError::DimensionMismatch {
            context: "vehicle state",
            expected: 4,
            found: x.len(),
        });
    }
    Ok(traj
        .states
        .iter()
        .map(|x| -x[0] + x[2] + headway * x[3])
        .collect())
}

/// A finished vehicle run: the trajectory plus its spacing-error signal.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub trajectory: Trajectory,
    pub error: Vec<f64>,
}

impl ExperimentResult {
    /// CSV rows `t,v1,v2,e`, one per grid point, decimal notation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,v1,v2,e\n");
        for (i, t) in self.trajectory.times.iter().enumerate() {
            let x = &self.trajectory.states[i];
            let _ = writeln!(out, "{},{},{},{}", t, x[1], x[3], self.error[i]);
        }
        out
    }

    pub fn max_abs_error(&self) -> f64 {
        self.error.iter().fold(0.0, |m, e| m.max(e.abs()))
    }
}

/// Integrates the closed-loop vehicle model and derives the spacing error.
pub fn run_vehicle_experiment(
    params: &VehicleParams,
    x0: &[f64],
    disturbance: &DrivingSignal,
    dt: f64,
    t_end: f64,
) -> Result<ExperimentResult, TrajectoryError> {
    if x0.len() != 4 {
        return Err(TrajectoryError::DimensionMismatch {
            context: "initial state",
            expected: 4,
            found: x0.len(),
        });
    }
    let (a, inject) = vehicle_closed_loop(params);
    let trajectory = integrate(&a, &inject, disturbance, x0, dt, t_end)?;
    let error = spacing_error(&trajectory, params.headway)?;
    Ok(ExperimentResult { trajectory, error })
}
