//! Boundary stabilization of a coupled reaction-diffusion / ODE system
//! (linearized FitzHugh-Nagumo dynamics) by backstepping feedback, with an
//! event-triggered sample-and-hold variant of the control law.
//!
//! The crate is organized around the pipeline used by the experiments:
//!
//! - [`kernel`] evaluates the backstepping kernel `k(x,y)`, its inverse
//!   kernel `l(x,y)`, the boundary gain trace `k(1,·)`, and the discrete
//!   Volterra transforms with their operator norms.
//! - [`discretization`] builds uniform space/time grids and assembles the
//!   fully discrete operator used by the implicit Euler scheme, including a
//!   cached direct factorization for the per-step solve.
//! - [`simulator`] runs the closed loop in three modes (uncontrolled,
//!   continuous feedback, event-triggered) and records trajectories and
//!   triggering events.
//! - [`analysis`] computes the explicit certificates: per-mode spectra, the
//!   instability test, the ISS gain, the stability certificate, the
//!   inter-sample growth constant, the minimal dwell-time bound, and
//!   empirical decay-rate fits.

pub mod analysis;
pub mod discretization;
pub mod kernel;
pub mod linalg;
pub mod simulator;

pub use analysis::{
    certificate_phi, decay_rate_fit, dwell_time_bound, fit_log_slope, gronwall_c,
    instability_check, iss_gain, mode_spectrum, sup_norm_constant, DwellTimeConstants,
    ModeSpectrum,
};
pub use discretization::{
    build_grid, build_system, discrete_l2_norm, implicit_euler_solve, DiscreteSystem, Grid,
};
pub use kernel::{
    gain_vector, inverse_kernel_value, kernel_value, transform_matrices, KernelParams,
    TransformMatrices,
};
pub use simulator::{
    deviation, run, sample_initial, trigger_fired, EventLog, InitialProfile, Mode, Snapshot,
    SystemParams, Trajectory,
};

/// Errors surfaced by the numerical routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument left the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A direct linear solve hit a vanishing pivot.
    #[error("singular linear system: {0}")]
    Singular(String),

    /// The dwell-time mode cap was too small to make the threshold margin
    /// positive; the trigger parameter is too small for this truncation.
    #[error(
        "mode cap {cap} too small: spectral tail {tail:.6e} never drops below \
         beta*|k(1,.)| = {threshold:.6e}"
    )]
    TruncationCap { cap: usize, tail: f64, threshold: f64 },

    /// A decay-rate fit was requested on a window with too little usable data.
    #[error("degenerate fit window: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
