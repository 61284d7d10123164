//! Python bindings for the simulation and certificate routines.
//!
//! The module exposes plain functions over Python scalars/lists so no
//! array dependency is required: kernel and gain evaluation, transform
//! norms, spectra and certificates, the dwell-time bound, closed-loop
//! simulation in all three modes, and log-linear decay fits.

use fhn_etc as core;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(
    a: f64,
    rho: f64,
    gamma: f64,
    delta: f64,
    lambda_damp: f64,
    beta: f64,
    epsilon: f64,
) -> core::SystemParams {
    core::SystemParams { a, rho, gamma, delta, lambda_damp, beta, epsilon }
}

/// Backstepping kernel k(x, y).
#[pyfunction]
#[pyo3(signature = (x, y, a=-11.0, lambda_damp=1.0))]
fn kernel_value(x: f64, y: f64, a: f64, lambda_damp: f64) -> PyResult<f64> {
    core::kernel_value(x, y, core::KernelParams::new(a, lambda_damp)).map_err(err)
}

/// Inverse kernel l(x, y).
#[pyfunction]
#[pyo3(signature = (x, y, a=-11.0, lambda_damp=1.0))]
fn inverse_kernel_value(x: f64, y: f64, a: f64, lambda_damp: f64) -> PyResult<f64> {
    core::inverse_kernel_value(x, y, core::KernelParams::new(a, lambda_damp)).map_err(err)
}

/// Gain trace k(1, x_i) at the interior nodes of an n-point grid.
#[pyfunction]
#[pyo3(signature = (n=40, a=-11.0, lambda_damp=1.0))]
fn gain_vector(n: usize, a: f64, lambda_damp: f64) -> PyResult<Vec<f64>> {
    let grid = core::build_grid(n, 1, 1.0).map_err(err)?;
    Ok(core::gain_vector(&grid, core::KernelParams::new(a, lambda_damp)))
}

/// Discrete L2 norm of the gain trace, sqrt(h K^T K).
#[pyfunction]
#[pyo3(signature = (n=40, a=-11.0, lambda_damp=1.0))]
fn gain_norm(n: usize, a: f64, lambda_damp: f64) -> PyResult<f64> {
    let grid = core::build_grid(n, 1, 1.0).map_err(err)?;
    let gains = core::gain_vector(&grid, core::KernelParams::new(a, lambda_damp));
    Ok(core::discrete_l2_norm(&gains, grid.h))
}

/// Volterra transform norm bounds (pi_norm, pi_inv_norm).
#[pyfunction]
#[pyo3(signature = (n=40, a=-11.0, lambda_damp=1.0))]
fn transform_norms(n: usize, a: f64, lambda_damp: f64) -> PyResult<(f64, f64)> {
    let grid = core::build_grid(n, 1, 1.0).map_err(err)?;
    let t = core::transform_matrices(&grid, core::KernelParams::new(a, lambda_damp));
    Ok((t.pi_norm, t.pi_inv_norm))
}

/// Discrete L2 norm sqrt(h sum v_i^2).
#[pyfunction]
fn discrete_l2_norm(values: Vec<f64>, h: f64) -> f64 {
    core::discrete_l2_norm(&values, h)
}

/// Per-mode eigenvalue pair (lambda_n, mu_n).
#[pyfunction]
#[pyo3(signature = (n, a=-11.0, rho=1.0, gamma=1.0, delta=1.0, lambda_damp=1.0, use_damping=false))]
#[allow(clippy::too_many_arguments)]
fn mode_spectrum(
    n: usize,
    a: f64,
    rho: f64,
    gamma: f64,
    delta: f64,
    lambda_damp: f64,
    use_damping: bool,
) -> PyResult<(f64, f64)> {
    let p = params(a, rho, gamma, delta, lambda_damp, 0.001, delta / 2.0);
    let s = core::mode_spectrum(n, &p, use_damping).map_err(err)?;
    Ok((s.lambda_n, s.mu_n))
}

/// True when the first mode of the experiment system grows.
#[pyfunction]
#[pyo3(signature = (a=-11.0, rho=1.0, gamma=1.0, delta=1.0))]
fn instability_check(a: f64, rho: f64, gamma: f64, delta: f64) -> bool {
    let p = params(a, rho, gamma, delta, 1.0, 0.001, delta / 2.0);
    core::instability_check(&p)
}

/// ISS gain of the damped target system.
#[pyfunction]
#[pyo3(signature = (lambda_damp=1.0, delta=1.0, rho=1.0, gamma=1.0, epsilon=0.05))]
fn iss_gain(lambda_damp: f64, delta: f64, rho: f64, gamma: f64, epsilon: f64) -> PyResult<f64> {
    let p = params(0.0, rho, gamma, delta, lambda_damp, 0.001, epsilon);
    core::iss_gain(&p).map_err(err)
}

/// Closed-loop certificate 2 beta vartheta |k(1,.)| |Pi^{-1}|.
#[pyfunction]
fn certificate_phi(beta: f64, vartheta: f64, gain_norm: f64, pi_inv_norm: f64) -> f64 {
    core::certificate_phi(beta, vartheta, gain_norm, pi_inv_norm)
}

/// Inter-sample growth constant M_j for a given event gap.
#[pyfunction]
#[pyo3(signature = (gain_norm, gap, a=-11.0, rho=1.0, gamma=1.0, delta=1.0))]
fn sup_norm_constant(gain_norm: f64, gap: f64, a: f64, rho: f64, gamma: f64, delta: f64) -> f64 {
    let p = params(a, rho, gamma, delta, 1.0, 0.001, delta / 2.0);
    core::sup_norm_constant(&p, gain_norm, gap)
}

/// Minimal dwell-time lower bound and its constants.
#[pyfunction]
#[pyo3(signature = (beta, a=-11.0, rho=1.0, gamma=1.0, delta=1.0, lambda_damp=1.0, cap_n=200))]
#[allow(clippy::too_many_arguments)]
fn dwell_time_bound(
    py: Python<'_>,
    beta: f64,
    a: f64,
    rho: f64,
    gamma: f64,
    delta: f64,
    lambda_damp: f64,
    cap_n: usize,
) -> PyResult<Py<PyDict>> {
    let p = params(a, rho, gamma, delta, lambda_damp, beta, delta / 2.0);
    let (tau, k) = core::dwell_time_bound(&p, p.kernel_params(), cap_n).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("tau", tau)?;
    out.set_item("a0", k.a0)?;
    out.set_item("a1", k.a1)?;
    out.set_item("a2", k.a2)?;
    out.set_item("c", k.c)?;
    out.set_item("f_n", k.f_n)?;
    out.set_item("g_n", k.g_n)?;
    out.set_item("n_trunc", k.n_trunc)?;
    Ok(out.into())
}

/// Least-squares slope of ln(v) against t.
#[pyfunction]
fn decay_rate_fit(ts: Vec<f64>, vs: Vec<f64>) -> PyResult<f64> {
    core::fit_log_slope(&ts, &vs).map_err(err)
}

/// Closed-loop simulation.
///
/// Returns a dict with the time axis, norm traces, applied controls, and
/// the event log; pass return_states=True for the full v/w snapshots.
#[pyfunction]
#[pyo3(signature = (
    mode="event_triggered", n=40, m=2000, horizon=6.0,
    a=-11.0, rho=1.0, gamma=1.0, delta=1.0, lambda_damp=1.0,
    beta=0.001, epsilon=0.05, profile="paper_default",
    v0=None, w0=None, return_states=false
))]
#[allow(clippy::too_many_arguments)]
fn simulate(
    py: Python<'_>,
    mode: &str,
    n: usize,
    m: usize,
    horizon: f64,
    a: f64,
    rho: f64,
    gamma: f64,
    delta: f64,
    lambda_damp: f64,
    beta: f64,
    epsilon: f64,
    profile: &str,
    v0: Option<Vec<f64>>,
    w0: Option<Vec<f64>>,
    return_states: bool,
) -> PyResult<Py<PyDict>> {
    let p = params(a, rho, gamma, delta, lambda_damp, beta, epsilon);
    let mode: core::Mode = mode.parse().map_err(err)?;
    let profile = match (v0, w0) {
        (Some(v0), Some(w0)) => core::InitialProfile::Custom { v0, w0 },
        (None, None) => profile.parse().map_err(err)?,
        _ => return Err(PyValueError::new_err("v0 and w0 must be given together")),
    };
    let grid = core::build_grid(n, m, horizon).map_err(err)?;
    let sys = core::build_system(&grid, &p).map_err(err)?;
    let (v0, w0) = core::sample_initial(&grid, &profile).map_err(err)?;
    let (traj, events) = core::run(&sys, &grid, &p, (&v0, &w0), mode).map_err(err)?;

    let steps = grid.n_steps;
    let v_norm: Vec<f64> = (0..=steps).map(|i| traj.norm_v(i)).collect();
    let w_norm: Vec<f64> = (0..=steps).map(|i| traj.norm_w(i)).collect();
    let total: Vec<f64> = v_norm.iter().zip(&w_norm).map(|(a, b)| a + b).collect();

    let out = PyDict::new(py);
    out.set_item("t", grid.t_nodes.clone())?;
    out.set_item("x", grid.x_nodes.clone())?;
    out.set_item("v_norm", v_norm)?;
    out.set_item("w_norm", w_norm)?;
    out.set_item("total_norm", total)?;
    out.set_item("controls", traj.controls.clone())?;
    out.set_item("trigger_times", events.trigger_times.clone())?;
    out.set_item("held_controls", events.held_controls.clone())?;
    out.set_item("gaps", events.gaps.clone())?;
    out.set_item("trigger_count", events.trigger_count())?;
    if return_states {
        let v: Vec<Vec<f64>> = traj.snapshots.iter().map(|s| s.v.clone()).collect();
        let w: Vec<Vec<f64>> = traj.snapshots.iter().map(|s| s.w.clone()).collect();
        out.set_item("v", v)?;
        out.set_item("w", w)?;
    }
    Ok(out.into())
}

#[pymodule]
fn fhn_etc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(kernel_value, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_kernel_value, m)?)?;
    m.add_function(wrap_pyfunction!(gain_vector, m)?)?;
    m.add_function(wrap_pyfunction!(gain_norm, m)?)?;
    m.add_function(wrap_pyfunction!(transform_norms, m)?)?;
    m.add_function(wrap_pyfunction!(discrete_l2_norm, m)?)?;
    m.add_function(wrap_pyfunction!(mode_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(instability_check, m)?)?;
    m.add_function(wrap_pyfunction!(iss_gain, m)?)?;
    m.add_function(wrap_pyfunction!(certificate_phi, m)?)?;
    m.add_function(wrap_pyfunction!(sup_norm_constant, m)?)?;
    m.add_function(wrap_pyfunction!(dwell_time_bound, m)?)?;
    m.add_function(wrap_pyfunction!(decay_rate_fit, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
