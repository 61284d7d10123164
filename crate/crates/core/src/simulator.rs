//! Closed-loop simulation in three modes: uncontrolled, continuous
//! backstepping feedback, and event-triggered sample-and-hold feedback.
//!
//! The event-triggered loop is a literal transcription of the sampled
//! update rule: hold the state sample `z(t_j)`, apply `q = h K^T z(t_j)`
//! on every step, then compare the newly computed state against the held
//! sample. A trigger fires when
//!
//! ```text
//! |h K^T (z(t_j) - z(t))| > beta |K| (V(t) + V(t_j)),
//! V(s) = |v(s)| + |w(s)|   (discrete L2 norms),
//! ```
//!
//! at which point the held sample is replaced and the instant logged. The
//! inequality is strict, so an identically zero state never triggers.

use crate::discretization::{discrete_l2_norm, implicit_euler_solve, DiscreteSystem, Grid};
use crate::kernel::KernelParams;
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Physical and design parameters of the closed loop.
///
/// The mathematical regime of interest has `rho, gamma, delta > 0` and
/// `0 < epsilon < delta`; those constraints are checked by [`validate`]
/// (called when configurations are loaded) rather than at construction, so
/// decoupled edge cases remain expressible in tests.
///
/// [`validate`]: SystemParams::validate
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// PDE reaction coefficient.
    pub a: f64,
    /// PDE <- ODE coupling.
    pub rho: f64,
    /// ODE <- PDE coupling.
    pub gamma: f64,
    /// ODE decay rate.
    pub delta: f64,
    /// Backstepping damping of the transformed dynamics.
    pub lambda_damp: f64,
    /// Trigger threshold parameter.
    pub beta: f64,
    /// Decay margin in `(0, delta)`.
    pub epsilon: f64,
}

impl SystemParams {
    /// The desk-scale experiment defaults: coupling `[[-11, 1], [-1, 1]]`,
    /// damping 1, trigger parameter 0.001, margin 0.05.
    pub fn paper_defaults() -> Self {
        Self {
            a: -11.0,
            rho: 1.0,
            gamma: 1.0,
            delta: 1.0,
            lambda_damp: 1.0,
            beta: 0.001,
            epsilon: 0.05,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("a", self.a),
            ("rho", self.rho),
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("lambda", self.lambda_damp),
            ("beta", self.beta),
            ("epsilon", self.epsilon),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {value}")));
            }
        }
        if self.rho <= 0.0 {
            return Err(Error::Domain(format!("rho must be positive, got {}", self.rho)));
        }
        if self.gamma <= 0.0 {
            return Err(Error::Domain(format!("gamma must be positive, got {}", self.gamma)));
        }
        if self.delta <= 0.0 {
            return Err(Error::Domain(format!("delta must be positive, got {}", self.delta)));
        }
        if self.epsilon <= 0.0 || self.epsilon >= self.delta {
            return Err(Error::Domain(format!(
                "epsilon must lie in (0, delta): epsilon = {}, delta = {}",
                self.epsilon, self.delta
            )));
        }
        if self.beta < 0.0 {
            return Err(Error::Domain(format!("beta must be nonnegative, got {}", self.beta)));
        }
        Ok(())
    }

    pub fn kernel_params(&self) -> KernelParams {
        KernelParams::new(self.a, self.lambda_damp)
    }
}

/// Control strategy for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Uncontrolled,
    Continuous,
    EventTriggered,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Uncontrolled => "uncontrolled",
            Mode::Continuous => "continuous",
            Mode::EventTriggered => "event_triggered",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uncontrolled" => Ok(Mode::Uncontrolled),
            "continuous" => Ok(Mode::Continuous),
            "event_triggered" => Ok(Mode::EventTriggered),
            other => Err(Error::Domain(format!(
                "unknown mode {other:?}; expected uncontrolled, continuous, or event_triggered"
            ))),
        }
    }
}

/// Initial data specification for [`sample_initial`].
#[derive(Debug, Clone, PartialEq)]
pub enum InitialProfile {
    /// `v0(x) = sin(pi x)`, `w0(x) = sin(2 pi x)`.
    PaperDefault,
    Zero,
    /// Tabulated interior values; both tables must have length `N`.
    Custom { v0: Vec<f64>, w0: Vec<f64> },
}

impl FromStr for InitialProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper_default" => Ok(InitialProfile::PaperDefault),
            "zero" => Ok(InitialProfile::Zero),
            other => Err(Error::Domain(format!(
                "unknown initial profile {other:?}; expected paper_default or zero"
            ))),
        }
    }
}

/// Samples the initial profile at the grid's interior nodes.
pub fn sample_initial(grid: &Grid, profile: &InitialProfile) -> Result<(Vec<f64>, Vec<f64>)> {
    match profile {
        InitialProfile::PaperDefault => {
            let v0 = grid.x_nodes.iter().map(|&x| (PI * x).sin()).collect();
            let w0 = grid.x_nodes.iter().map(|&x| (2.0 * PI * x).sin()).collect();
            Ok((v0, w0))
        }
        InitialProfile::Zero => Ok((vec![0.0; grid.n_interior], vec![0.0; grid.n_interior])),
        InitialProfile::Custom { v0, w0 } => {
            if v0.len() != grid.n_interior || w0.len() != grid.n_interior {
                return Err(Error::Domain(format!(
                    "custom profile length mismatch: v0 = {}, w0 = {}, N = {}",
                    v0.len(),
                    w0.len(),
                    grid.n_interior
                )));
            }
            Ok((v0.clone(), w0.clone()))
        }
    }
}

/// One recorded state: interior samples of both components.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub v: Vec<f64>,
    pub w: Vec<f64>,
}

impl Snapshot {
    fn from_state(z: &[f64], n: usize) -> Self {
        Snapshot { v: z[..n].to_vec(), w: z[n..].to_vec() }
    }

    pub fn to_state(&self) -> Vec<f64> {
        let mut z = self.v.clone();
        z.extend_from_slice(&self.w);
        z
    }
}

/// Time-indexed run record: `M + 1` snapshots plus the `M` control values,
/// where `controls[n]` is the value applied in the step producing
/// `snapshots[n + 1]`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    pub controls: Vec<f64>,
    pub grid: Grid,
}

impl Trajectory {
    pub fn norm_v(&self, n: usize) -> f64 {
        discrete_l2_norm(&self.snapshots[n].v, self.grid.h)
    }

    pub fn norm_w(&self, n: usize) -> f64 {
        discrete_l2_norm(&self.snapshots[n].w, self.grid.h)
    }

    /// `V(t_n) = |v(t_n)| + |w(t_n)|`.
    pub fn total_norm(&self, n: usize) -> f64 {
        self.norm_v(n) + self.norm_w(n)
    }

    pub fn state(&self, n: usize) -> Vec<f64> {
        self.snapshots[n].to_state()
    }
}

/// Ordered record of triggering instants.
///
/// `trigger_times[0] = 0` always; `held_controls[j]` is the control applied
/// on the interval starting at `trigger_times[j]`; `gaps[j]` is
/// `trigger_times[j+1] - trigger_times[j]`.
#[derive(Debug, Clone)]
pub struct EventLog {
    pub trigger_times: Vec<f64>,
    pub held_controls: Vec<f64>,
    pub gaps: Vec<f64>,
}

impl EventLog {
    /// Number of triggers after the initial instant `t_0 = 0`.
    pub fn trigger_count(&self) -> usize {
        self.trigger_times.len().saturating_sub(1)
    }

    pub fn min_gap(&self) -> Option<f64> {
        self.gaps.iter().copied().reduce(f64::min)
    }

    pub fn mean_gap(&self) -> Option<f64> {
        if self.gaps.is_empty() {
            None
        } else {
            Some(self.gaps.iter().sum::<f64>() / self.gaps.len() as f64)
        }
    }
}

/// Sampling deviation `d = h K^T (z_held - z_now)`.
pub fn deviation(sys: &DiscreteSystem, grid: &Grid, z_held: &[f64], z_now: &[f64]) -> f64 {
    debug_assert_eq!(z_held.len(), 2 * grid.n_interior);
    debug_assert_eq!(z_now.len(), 2 * grid.n_interior);
    let mut acc = 0.0;
    for ((k, a), b) in sys.gain.iter().zip(z_held.iter()).zip(z_now.iter()) {
        acc += k * (a - b);
    }
    grid.h * acc
}

/// Event-trigger test: `|d| > beta |K| (V(t) + V(t_j))`, strict.
pub fn trigger_fired(
    sys: &DiscreteSystem,
    grid: &Grid,
    params: &SystemParams,
    z_held: &[f64],
    z_now: &[f64],
) -> bool {
    let n = grid.n_interior;
    let d = deviation(sys, grid, z_held, z_now);
    let v_now = discrete_l2_norm(&z_now[..n], grid.h) + discrete_l2_norm(&z_now[n..], grid.h);
    let v_held = discrete_l2_norm(&z_held[..n], grid.h) + discrete_l2_norm(&z_held[n..], grid.h);
    d.abs() > params.beta * sys.gain_norm() * (v_now + v_held)
}

/// Runs the closed loop from sampled initial data.
pub fn run(
    sys: &DiscreteSystem,
    grid: &Grid,
    params: &SystemParams,
    initial: (&[f64], &[f64]),
    mode: Mode,
) -> Result<(Trajectory, EventLog)> {
    let n = grid.n_interior;
    let (v0, w0) = initial;
    if v0.len() != n || w0.len() != n {
        return Err(Error::Domain(format!(
            "initial data length mismatch: v0 = {}, w0 = {}, N = {n}",
            v0.len(),
            w0.len()
        )));
    }

    let mut z: Vec<f64> = v0.iter().chain(w0.iter()).copied().collect();
    let mut held = z.clone();

    let mut snapshots = Vec::with_capacity(grid.n_steps + 1);
    snapshots.push(Snapshot::from_state(&z, n));
    let mut controls = Vec::with_capacity(grid.n_steps);

    // t_0 = 0 is always an event; the first interval holds the feedback of
    // the initial sample (identically zero in the uncontrolled mode).
    let q0 = match mode {
        Mode::Uncontrolled => 0.0,
        Mode::Continuous | Mode::EventTriggered => sys.feedback(&z),
    };
    let mut trigger_times = vec![0.0];
    let mut held_controls = vec![q0];
    let mut gaps = Vec::new();

    for step in 0..grid.n_steps {
        let q = match mode {
            Mode::Uncontrolled => 0.0,
            Mode::Continuous => sys.feedback(&z),
            Mode::EventTriggered => sys.feedback(&held),
        };
        let z_next = implicit_euler_solve(sys, grid, &z, q)?;
        controls.push(q);

        if mode == Mode::EventTriggered && trigger_fired(sys, grid, params, &held, &z_next) {
            held.copy_from_slice(&z_next);
            let t = grid.t_nodes[step + 1];
            gaps.push(t - *trigger_times.last().expect("t_0 present"));
            trigger_times.push(t);
            held_controls.push(sys.feedback(&held));
        }

        snapshots.push(Snapshot::from_state(&z_next, n));
        z = z_next;
    }

    Ok((
        Trajectory { snapshots, controls, grid: grid.clone() },
        EventLog { trigger_times, held_controls, gaps },
    ))
}
