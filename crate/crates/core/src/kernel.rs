//! Backstepping kernel, inverse kernel, boundary gain, and the discrete
//! Volterra transforms.
//!
//! The kernel `k` solves, on the triangle `T = {0 <= y <= x <= 1}`,
//!
//! ```text
//! k_xx - k_yy - (lambda - a) k = 0,
//! 2 (d/dx) k(x,x) + (lambda - a) = 0,
//! k(x,0) = 0,
//! ```
//!
//! and has two equivalent closed forms: the power series
//!
//! ```text
//! k(x,y) = -sum_{n>=0} ((lambda-a)/4)^{n+1} 2y (x^2-y^2)^n / ((n!)^2 (n+1))
//! ```
//!
//! and the Bessel-type representation
//!
//! ```text
//! k(x,y) = (a-lambda) y I1(z)/z,   z = sqrt((a-lambda)(y^2-x^2)),
//! I1(x)  = sum_{n>=0} (x/2)^{1+2n} / (n! (n+1)!).
//! ```
//!
//! The inverse kernel `l` solves the same problem with the sign of the
//! zeroth-order PDE term flipped while keeping the diagonal condition, which
//! the generic series solves with the argument sign swapped:
//! `l(x,y) = -k(x,y)|_{(lambda-a) -> -(lambda-a)}`.

use crate::discretization::Grid;
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Default series truncation order; far beyond double precision for
/// `|lambda - a| <= 50` thanks to the factorial-squared denominators.
pub const DEFAULT_N_TERMS: usize = 40;

/// Below this value of `|z|` the Bessel-type form is replaced by the direct
/// power series to avoid the removable 0/0 in `I1(z)/z`.
const Z_SWITCH: f64 = 1e-6;

/// Early-exit threshold: stop summing once a term falls below this fraction
/// of the partial sum.
const SERIES_EPS: f64 = 1e-16;

/// Parameters of the kernel problem.
///
/// `a` is the PDE reaction coefficient and `lambda` the damping of the
/// transformed dynamics; only their difference enters the kernel. No sign
/// restriction is placed on either (the experiments use `a < 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub a: f64,
    pub lambda: f64,
    pub n_terms: usize,
}

impl KernelParams {
    pub fn new(a: f64, lambda: f64) -> Self {
        Self { a, lambda, n_terms: DEFAULT_N_TERMS }
    }

    /// Like [`KernelParams::new`] with an explicit truncation order.
    pub fn with_terms(a: f64, lambda: f64, n_terms: usize) -> Result<Self> {
        if !a.is_finite() || !lambda.is_finite() {
            return Err(Error::Domain(format!(
                "kernel parameters must be finite: a = {a}, lambda = {lambda}"
            )));
        }
        if n_terms < 1 {
            return Err(Error::Domain("n_terms must be at least 1".into()));
        }
        Ok(Self { a, lambda, n_terms })
    }
}

/// Discrete Volterra transform `Pi` and its inverse, with operator norms.
///
/// Both matrices are lower triangular; row `i` applies the left-closed
/// rectangle rule `h * sum_{j<=i}` to the kernel integral, so the diagonal
/// entries are `1 - h k(x_i, x_i)` and `1 + h l(x_i, x_i)` respectively.
///
/// `pi_norm` and `pi_inv_norm` are the Volterra operator-norm bounds of the
/// continuous transforms, `1 + |kernel|_{L2(T)}` with the Hilbert-Schmidt
/// norm taken over the triangle. The inverse bound is the constant entering
/// the closed-loop certificate. The spectral norm of either assembled
/// matrix is available through [`Matrix::operator_norm`].
#[derive(Debug, Clone)]
pub struct TransformMatrices {
    pub pi: Matrix,
    pub pi_inv: Matrix,
    pub pi_norm: f64,
    pub pi_inv_norm: f64,
}

/// Modified-Bessel-type series `I1(x) = sum_{n>=0} (x/2)^{1+2n} / (n!(n+1)!)`.
pub fn bessel_i1(x: f64, n_terms: usize) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    for n in 1..n_terms {
        term *= q / (n as f64 * (n + 1) as f64);
        sum += term;
        if term.abs() <= SERIES_EPS * sum.abs() {
            break;
        }
    }
    sum
}

/// Truncated power series for the generic kernel problem with coefficient
/// `m` in place of `(lambda - a)`. No domain checks.
fn kernel_series(x: f64, y: f64, m: f64, n_terms: usize) -> f64 {
    let w = x * x - y * y;
    let q = 0.25 * m * w;
    // term_0 = -(m/4) * 2y; term ratio is q / (n (n+1)).
    let mut term = -0.5 * m * y;
    let mut sum = term;
    for n in 1..n_terms {
        term *= q / (n as f64 * (n + 1) as f64);
        sum += term;
        if term.abs() <= SERIES_EPS * sum.abs() {
            break;
        }
    }
    sum
}

/// Kernel evaluation for coefficient `m = lambda - a`, switching between the
/// Bessel-type form and the series. No domain checks; `0 <= y <= x <= 1` is
/// the caller's responsibility.
fn kernel_eval(x: f64, y: f64, m: f64, n_terms: usize) -> f64 {
    let z2 = m * (x * x - y * y);
    if z2 > Z_SWITCH * Z_SWITCH {
        let z = z2.sqrt();
        // (a - lambda) y I1(z)/z
        -m * y * bessel_i1(z, n_terms) / z
    } else {
        // Near the diagonal (removable singularity) and for z^2 <= 0 the
        // series is the stable evaluation.
        kernel_series(x, y, m, n_terms)
    }
}

fn check_triangle(x: f64, y: f64) -> Result<()> {
    if !x.is_finite() || !y.is_finite() || y < 0.0 || y > x || x > 1.0 {
        return Err(Error::Domain(format!(
            "kernel arguments must satisfy 0 <= y <= x <= 1: x = {x}, y = {y}"
        )));
    }
    Ok(())
}

/// Backstepping kernel `k(x,y)` on the triangle `0 <= y <= x <= 1`.
pub fn kernel_value(x: f64, y: f64, p: KernelParams) -> Result<f64> {
    check_triangle(x, y)?;
    Ok(kernel_eval(x, y, p.lambda - p.a, p.n_terms))
}

/// Inverse kernel `l(x,y)` on the triangle `0 <= y <= x <= 1`.
pub fn inverse_kernel_value(x: f64, y: f64, p: KernelParams) -> Result<f64> {
    check_triangle(x, y)?;
    Ok(-kernel_eval(x, y, -(p.lambda - p.a), p.n_terms))
}

/// Gain trace `k(1, y)` without domain checks; `y` in `[0,1]` assumed.
pub(crate) fn boundary_trace(y: f64, p: KernelParams) -> f64 {
    kernel_eval(1.0, y, p.lambda - p.a, p.n_terms)
}

/// Boundary gain trace `K_i = k(1, x_i)` at the interior grid nodes.
pub fn gain_vector(grid: &Grid, p: KernelParams) -> Vec<f64> {
    let m = p.lambda - p.a;
    grid.x_nodes
        .iter()
        .map(|&xi| kernel_eval(1.0, xi, m, p.n_terms))
        .collect()
}

/// Panels per direction for the triangle quadrature behind the transform
/// norms; trapezoid error at this resolution is far below the 2% tolerance
/// the certificate constants are checked against.
const TRIANGLE_PANELS: usize = 400;

/// Hilbert-Schmidt norm of a kernel over the triangle `0 <= y <= x <= 1`,
/// by the trapezoid rule in both directions.
fn triangle_hs_norm(f: impl Fn(f64, f64) -> f64) -> f64 {
    let nn = TRIANGLE_PANELS;
    let hh = 1.0 / nn as f64;
    let mut acc = 0.0;
    for i in 1..=nn {
        let x = i as f64 * hh;
        let mut inner = 0.0;
        for j in 0..=i {
            let y = j as f64 * hh;
            let val = f(x, y);
            let w = if j == 0 || j == i { 0.5 } else { 1.0 };
            inner += w * val * val;
        }
        let wx = if i == nn { 0.5 } else { 1.0 };
        acc += wx * inner * hh;
    }
    (acc * hh).max(0.0).sqrt()
}

/// Assembles the discrete Volterra transform and its inverse on the grid's
/// interior nodes, together with the operator-norm bounds
/// `1 + |k|_{L2(T)}` and `1 + |l|_{L2(T)}` of the continuous transforms.
pub fn transform_matrices(grid: &Grid, p: KernelParams) -> TransformMatrices {
    let n = grid.n_interior;
    let h = grid.h;
    let m = p.lambda - p.a;
    let mut pi = Matrix::zeros(n, n);
    let mut pi_inv = Matrix::zeros(n, n);
    for i in 0..n {
        let xi = grid.x_nodes[i];
        for j in 0..=i {
            let xj = grid.x_nodes[j];
            let delta = if i == j { 1.0 } else { 0.0 };
            pi.set(i, j, delta - h * kernel_eval(xi, xj, m, p.n_terms));
            pi_inv.set(i, j, delta + h * (-kernel_eval(xi, xj, -m, p.n_terms)));
        }
    }
    let pi_norm = 1.0 + triangle_hs_norm(|x, y| kernel_eval(x, y, m, p.n_terms));
    let pi_inv_norm = 1.0 + triangle_hs_norm(|x, y| -kernel_eval(x, y, -m, p.n_terms));
    TransformMatrices { pi, pi_inv, pi_norm, pi_inv_norm }
}
