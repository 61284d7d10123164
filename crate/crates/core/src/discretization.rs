//! Uniform grids, the fully discrete operator of the coupled system, and
//! the implicit Euler step.
//!
//! The state is `Z = (v, w)` with `v` the interior samples of the PDE
//! component and `w` those of the ODE component. One implicit Euler step
//! solves
//!
//! ```text
//! (I + dt A_h) Z^{n+1} = Z^n + dt B_h q^{n+1},
//! ```
//!
//! where `A_h` embeds the Dirichlet Laplacian in the `(v,v)` block plus the
//! coupling matrix `C = [[a, rho], [-gamma, delta]]` applied nodewise, and
//! `B_h` injects the boundary value into the last interior `v` row with
//! weight `1/h^2`.
//!
//! The solve eliminates `w` first (its block is diagonal), leaving a
//! tridiagonal Schur complement in `v` that is factored once at build time.

use crate::kernel;
use crate::linalg::{Matrix, TridiagFactor};
use crate::simulator::SystemParams;
use crate::{Error, Result};

/// Uniform space/time discretization of `(0,1) x (0,T)`.
///
/// `N` interior nodes `x_i = i h` with `h = 1/(N+1)`, and `M` time steps
/// `t_n = n dt` with `dt = T/M`.
#[derive(Debug, Clone)]
pub struct Grid {
    pub n_interior: usize,
    pub n_steps: usize,
    pub horizon: f64,
    pub h: f64,
    pub dt: f64,
    pub x_nodes: Vec<f64>,
    pub t_nodes: Vec<f64>,
}

pub fn build_grid(n_interior: usize, n_steps: usize, horizon: f64) -> Result<Grid> {
    if n_interior < 3 {
        return Err(Error::Domain(format!(
            "n_interior must be at least 3, got {n_interior}"
        )));
    }
    if n_steps < 1 {
        return Err(Error::Domain(format!("n_steps must be at least 1, got {n_steps}")));
    }
    if !horizon.is_finite() || horizon <= 0.0 {
        return Err(Error::Domain(format!("horizon must be positive, got {horizon}")));
    }
    let h = 1.0 / (n_interior as f64 + 1.0);
    let dt = horizon / n_steps as f64;
    let x_nodes = (1..=n_interior).map(|i| i as f64 * h).collect();
    let t_nodes = (0..=n_steps).map(|n| n as f64 * dt).collect();
    Ok(Grid { n_interior, n_steps, horizon, h, dt, x_nodes, t_nodes })
}

/// Discrete L2 norm `sqrt(h sum v_i^2)`.
pub fn discrete_l2_norm(vec: &[f64], h: f64) -> f64 {
    (h * vec.iter().map(|v| v * v).sum::<f64>()).sqrt()
}

/// Assembled discrete operator with the cached step factorization.
#[derive(Debug, Clone)]
pub struct DiscreteSystem {
    /// Full `2N x 2N` operator.
    pub a_h: Matrix,
    /// Boundary control operator: single entry `1/h^2` at the last `v` row.
    pub b_h: Vec<f64>,
    /// Coupling matrix `C = [[a, rho], [-gamma, delta]]`.
    pub coupling: [[f64; 2]; 2],
    /// Feedback gain `K`: kernel trace `k(1, x_i)` padded with `N` zeros.
    pub gain: Vec<f64>,
    n: usize,
    h: f64,
    dt: f64,
    rho: f64,
    gamma: f64,
    /// `1 + dt * delta`, the diagonal `w` pivot.
    w_pivot: f64,
    /// Factorization of the tridiagonal Schur complement in `v`.
    schur: TridiagFactor,
}

impl DiscreteSystem {
    pub fn n_interior(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Discrete L2 norm of the gain, `sqrt(h K^T K)`.
    pub fn gain_norm(&self) -> f64 {
        discrete_l2_norm(&self.gain, self.h)
    }

    /// Feedback value `h K^T z` for a full state vector.
    pub fn feedback(&self, z: &[f64]) -> f64 {
        assert_eq!(z.len(), 2 * self.n, "state dimension mismatch");
        let mut acc = 0.0;
        for (k, zi) in self.gain.iter().zip(z.iter()) {
            acc += k * zi;
        }
        self.h * acc
    }
}

pub fn build_system(grid: &Grid, params: &SystemParams) -> Result<DiscreteSystem> {
    let n = grid.n_interior;
    let h = grid.h;
    let dt = grid.dt;
    let inv_h2 = 1.0 / (h * h);
    let (a, rho, gamma, delta) = (params.a, params.rho, params.gamma, params.delta);

    let mut a_h = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        // (v,v) block: Dirichlet Laplacian plus the reaction coefficient.
        a_h.set(i, i, 2.0 * inv_h2 + a);
        if i > 0 {
            a_h.set(i, i - 1, -inv_h2);
        }
        if i < n - 1 {
            a_h.set(i, i + 1, -inv_h2);
        }
        a_h.set(i, n + i, rho);
        a_h.set(n + i, i, -gamma);
        a_h.set(n + i, n + i, delta);
    }

    let mut b_h = vec![0.0; 2 * n];
    b_h[n - 1] = inv_h2;

    let mut gain = kernel::gain_vector(grid, params.kernel_params());
    gain.resize(2 * n, 0.0);

    let w_pivot = 1.0 + dt * delta;
    if w_pivot.abs() < 1e-300 {
        return Err(Error::Singular("w block pivot 1 + dt*delta vanishes".into()));
    }
    // Schur complement after eliminating w: constant tridiagonal in v.
    let diag = 1.0 + dt * (2.0 * inv_h2 + a) + dt * dt * rho * gamma / w_pivot;
    let off = -dt * inv_h2;
    let schur = TridiagFactor::new(&vec![off; n - 1], &vec![diag; n], &vec![off; n - 1])?;

    Ok(DiscreteSystem {
        a_h,
        b_h,
        coupling: [[a, rho], [-gamma, delta]],
        gain,
        n,
        h,
        dt,
        rho,
        gamma,
        w_pivot,
        schur,
    })
}

/// One implicit Euler step: solves `(I + dt A_h) Z = z_prev + dt B_h q`.
pub fn implicit_euler_solve(
    sys: &DiscreteSystem,
    grid: &Grid,
    z_prev: &[f64],
    q: f64,
) -> Result<Vec<f64>> {
    let n = sys.n;
    if z_prev.len() != 2 * n {
        return Err(Error::Domain(format!(
            "state length {} does not match 2N = {}",
            z_prev.len(),
            2 * n
        )));
    }
    if grid.n_interior != n || (grid.dt - sys.dt).abs() > f64::EPSILON * sys.dt.abs() {
        return Err(Error::Domain(
            "grid does not match the one the system was built on".into(),
        ));
    }
    if !q.is_finite() || z_prev.iter().any(|z| !z.is_finite()) {
        return Err(Error::Domain("non-finite state or control".into()));
    }

    let dt = sys.dt;
    let (v_prev, w_prev) = z_prev.split_at(n);

    // Eliminate w, solve the tridiagonal v system, back-substitute.
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        rhs[i] = v_prev[i] - dt * sys.rho * w_prev[i] / sys.w_pivot;
    }
    rhs[n - 1] += dt * sys.b_h[n - 1] * q;
    let v_new = sys.schur.solve(&rhs);

    let mut z = v_new;
    z.reserve(n);
    for i in 0..n {
        z.push((w_prev[i] + dt * sys.gamma * z[i]) / sys.w_pivot);
    }
    Ok(z)
}
