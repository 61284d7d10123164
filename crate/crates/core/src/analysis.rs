//! Explicit stability certificates and spectral quantities of the coupled
//! system, plus empirical decay-rate fits from simulated trajectories.
//!
//! Everything here is a pure function of the parameters: per-mode
//! eigenvalues, the instability test for the sign-flipped experiment
//! system, the ISS gain of the damped target dynamics, the closed-loop
//! certificate `Phi_e = 2 beta vartheta |k(1,.)| |Pi^{-1}|`, the
//! inter-sample growth constant `M_j`, and the minimal dwell-time lower
//! bound obtained from the truncated Fourier expansion of the gain trace.

use crate::kernel::{self, KernelParams};
use crate::simulator::{SystemParams, Trajectory};
use crate::{Error, Result};
use std::f64::consts::PI;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Number of uniform panels for the gain-trace quadratures. The integrands
/// are smooth, so composite Simpson on this many panels is accurate far
/// beyond every tolerance used downstream.
const QUAD_PANELS: usize = 2000;

/// Slow/fast eigenvalue pair of one spatial mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpectrum {
    pub n: usize,
    pub lambda_n: f64,
    pub mu_n: f64,
}

/// Eigenvalues of the per-mode 2x2 block.
///
/// With `kappa = lambda_damp` (damped target system) or `kappa = a` (raw
/// experiment system),
///
/// ```text
/// lambda_n, mu_n = ( -(kappa + n^2 pi^2 + delta)
///                    +- sqrt((kappa + n^2 pi^2 - delta)^2 - 4 rho gamma) ) / 2.
/// ```
pub fn mode_spectrum(n: usize, params: &SystemParams, use_damping: bool) -> Result<ModeSpectrum> {
    if n < 1 {
        return Err(Error::Domain("mode index must be at least 1".into()));
    }
    let kappa = if use_damping { params.lambda_damp } else { params.a };
    let n2pi2 = (n * n) as f64 * PI * PI;
    let s = kappa + n2pi2 - params.delta;
    let disc = s * s - 4.0 * params.rho * params.gamma;
    if disc <= 0.0 {
        return Err(Error::Domain(format!(
            "nonpositive discriminant {disc} for mode {n}: outside the real-spectrum regime"
        )));
    }
    let root = disc.sqrt();
    let trace_term = -(kappa + n2pi2 + params.delta);
    Ok(ModeSpectrum {
        n,
        lambda_n: 0.5 * (trace_term + root),
        mu_n: 0.5 * (trace_term - root),
    })
}

/// Instability test for the sign-flipped experiment system: true iff the
/// first mode eigenvalue is positive, i.e.
/// `(a + pi^2 - delta)^2 - 4 rho gamma > 0` and the root exceeds
/// `a + pi^2 + delta`.
pub fn instability_check(params: &SystemParams) -> bool {
    let s = params.a + PI * PI - params.delta;
    let disc = s * s - 4.0 * params.rho * params.gamma;
    disc > 0.0 && disc.sqrt() > params.a + PI * PI + params.delta
}

/// ISS gain of the damped target system:
///
/// ```text
/// vartheta = 2 pi^2 / ((lambda + pi^2 - delta)^2 - 4 rho gamma)
///          * (1 + 1/epsilon + 1/(pi^2 + lambda - delta + epsilon)).
/// ```
pub fn iss_gain(params: &SystemParams) -> Result<f64> {
    let lambda = params.lambda_damp;
    let (delta, eps) = (params.delta, params.epsilon);
    if eps <= 0.0 || eps >= delta {
        return Err(Error::Domain(format!(
            "epsilon must lie in (0, delta): epsilon = {eps}, delta = {delta}"
        )));
    }
    let s = lambda + PI * PI - delta;
    let disc = s * s - 4.0 * params.rho * params.gamma;
    if disc <= 0.0 {
        return Err(Error::Domain(format!(
            "nonpositive discriminant {disc}: damping too small for the real-spectrum regime"
        )));
    }
    let shifted = PI * PI + lambda - delta + eps;
    if shifted <= 0.0 {
        return Err(Error::Domain(format!(
            "pi^2 + lambda - delta + epsilon must be positive, got {shifted}"
        )));
    }
    Ok(2.0 * PI * PI / disc * (1.0 + 1.0 / eps + 1.0 / shifted))
}

/// Closed-loop certificate `Phi_e = 2 beta vartheta |k(1,.)| |Pi^{-1}|`;
/// the closed loop is certified when the result is below 1.
pub fn certificate_phi(beta: f64, vartheta: f64, gain_norm: f64, pi_inv_norm: f64) -> f64 {
    2.0 * beta * vartheta * gain_norm * pi_inv_norm
}

/// Growth-rate policy for the inter-sample estimate: an explicit upper
/// bound for the Young/Cauchy-Schwarz constants of the energy inequality.
/// The value is recorded in outputs so results are reproducible.
pub fn gronwall_c(params: &SystemParams) -> f64 {
    1.0 + params.rho + 2.0 * params.gamma + params.a.abs()
}

/// Inter-sample sup-norm constant
///
/// ```text
/// M_j = sqrt(2) e^{(c/2) gap} (1 + g + g / sqrt(c)) + g,
/// ```
///
/// with `g` the gain norm and `c` from [`gronwall_c`]. Requires `gap >= 0`.
pub fn sup_norm_constant(params: &SystemParams, gain_norm: f64, gap: f64) -> f64 {
    let c = gronwall_c(params);
    SQRT_2 * (0.5 * c * gap).exp() * (1.0 + gain_norm + gain_norm / c.sqrt()) + gain_norm
}

/// Constants of the dwell-time inequality `a0 <= a1 s + a2 s e^{(c/2) s}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DwellTimeConstants {
    /// Threshold margin `beta |k(1,.)| - |k(1,.) - g|`.
    pub a0: f64,
    /// Linear coefficient `|k(1,.)| (F_N + G_N)`.
    pub a1: f64,
    /// Exponential coefficient `sqrt(2) G_N (1 + |k| + |k|/sqrt(c))`.
    pub a2: f64,
    /// Growth rate from [`gronwall_c`].
    pub c: f64,
    /// `F_N = sum |k_n phi_n'(1)|`.
    pub f_n: f64,
    /// `G_N = sum |k_n (n^2 pi^2 + a + rho)|`.
    pub g_n: f64,
    /// Number of retained modes.
    pub n_trunc: usize,
}

/// Composite Simpson rule over the `QUAD_PANELS + 1` samples in `values`.
fn simpson(values: &[f64]) -> f64 {
    let panels = values.len() - 1;
    debug_assert!(panels >= 2 && panels.is_multiple_of(2));
    let h = 1.0 / panels as f64;
    let mut acc = values[0] + values[panels];
    for (q, v) in values.iter().enumerate().take(panels).skip(1) {
        acc += if q.is_multiple_of(2) { 2.0 * v } else { 4.0 * v };
    }
    acc * h / 3.0
}

/// Minimal dwell-time lower bound.
///
/// Expands the gain trace `k(1,.)` in the sine basis, retains the smallest
/// number of modes (up to `cap_n`) for which the remainder satisfies
/// `|k(1,.) - g| < beta |k(1,.)|`, assembles the inequality constants, and
/// returns the unique positive root of `a1 s + a2 s e^{(c/2) s} = a0`
/// together with those constants.
pub fn dwell_time_bound(
    params: &SystemParams,
    kernel_params: KernelParams,
    cap_n: usize,
) -> Result<(f64, DwellTimeConstants)> {
    if params.beta <= 0.0 {
        return Err(Error::Domain(format!(
            "dwell-time bound requires beta > 0, got {}",
            params.beta
        )));
    }
    if cap_n < 1 {
        return Err(Error::Domain("cap_n must be at least 1".into()));
    }

    let nodes = QUAD_PANELS + 1;
    let ys: Vec<f64> = (0..nodes).map(|q| q as f64 / QUAD_PANELS as f64).collect();
    let trace: Vec<f64> = ys
        .iter()
        .map(|&y| kernel::boundary_trace(y, kernel_params))
        .collect();

    let trace_sq: Vec<f64> = trace.iter().map(|k| k * k).collect();
    let gain_norm = simpson(&trace_sq).max(0.0).sqrt();
    let threshold = params.beta * gain_norm;

    let mut coeffs = Vec::with_capacity(cap_n);
    let mut g = vec![0.0; nodes];
    let mut selection = None;
    let mut last_tail = f64::INFINITY;
    for n in 1..=cap_n {
        let phi: Vec<f64> = ys.iter().map(|&y| SQRT_2 * (n as f64 * PI * y).sin()).collect();
        let integrand: Vec<f64> = trace.iter().zip(phi.iter()).map(|(k, p)| k * p).collect();
        let k_n = simpson(&integrand);
        coeffs.push(k_n);
        for (gi, pi_val) in g.iter_mut().zip(phi.iter()) {
            *gi += k_n * pi_val;
        }
        let residual: Vec<f64> = trace
            .iter()
            .zip(g.iter())
            .map(|(k, gv)| (k - gv) * (k - gv))
            .collect();
        let tail = simpson(&residual).max(0.0).sqrt();
        last_tail = tail;
        if tail < threshold {
            selection = Some((n, tail));
            break;
        }
    }
    let (n_trunc, tail) = selection.ok_or(Error::TruncationCap {
        cap: cap_n,
        tail: last_tail,
        threshold,
    })?;

    let mut f_n = 0.0;
    let mut g_n = 0.0;
    for (idx, &k_n) in coeffs.iter().take(n_trunc).enumerate() {
        let n = (idx + 1) as f64;
        // |phi_n'(1)| = sqrt(2) n pi
        f_n += (k_n * SQRT_2 * n * PI).abs();
        g_n += (k_n * (n * n * PI * PI + params.a + params.rho)).abs();
    }

    let c = gronwall_c(params);
    let constants = DwellTimeConstants {
        a0: threshold - tail,
        a1: gain_norm * (f_n + g_n),
        a2: SQRT_2 * g_n * (1.0 + gain_norm + gain_norm / c.sqrt()),
        c,
        f_n,
        g_n,
        n_trunc,
    };
    let tau = solve_dwell_root(&constants)?;
    Ok((tau, constants))
}

/// Root of `alpha(s) = a1 s + a2 s e^{(c/2) s} = a0` for `a0 > 0`.
///
/// `alpha` is strictly increasing from 0, so the bracket `[0, s_hi]` with
/// `s_hi` doubled until `alpha(s_hi) >= a0` always exists. Bisection then
/// narrows the bracket and a Newton polish pins the residual to relative
/// `1e-12`.
fn solve_dwell_root(k: &DwellTimeConstants) -> Result<f64> {
    let alpha = |s: f64| k.a1 * s + k.a2 * s * (0.5 * k.c * s).exp();
    let alpha_prime =
        |s: f64| k.a1 + k.a2 * (0.5 * k.c * s).exp() * (1.0 + 0.5 * k.c * s);
    debug_assert!(k.a0 > 0.0);

    let mut hi = 1e-3;
    let mut guard = 0;
    while alpha(hi) < k.a0 {
        hi *= 2.0;
        guard += 1;
        if guard > 4000 || !hi.is_finite() {
            return Err(Error::Domain(
                "dwell-time bracket search diverged (degenerate constants)".into(),
            ));
        }
    }
    let mut lo = 0.0;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if alpha(mid) >= k.a0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut s = 0.5 * (lo + hi);
    for _ in 0..8 {
        let res = alpha(s) - k.a0;
        if res.abs() <= 1e-12 * k.a0 {
            break;
        }
        let deriv = alpha_prime(s);
        if deriv <= 0.0 {
            break;
        }
        s -= res / deriv;
    }
    Ok(s)
}

/// Least-squares slope of `ln(v)` against `t`.
pub fn fit_log_slope(ts: &[f64], vs: &[f64]) -> Result<f64> {
    if ts.len() != vs.len() || ts.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "need at least 2 equal-length samples, got {} and {}",
            ts.len(),
            vs.len()
        )));
    }
    if let Some(bad) = vs.iter().find(|&&v| v <= 0.0 || v.is_nan()) {
        return Err(Error::DegenerateFit(format!("nonpositive norm sample {bad}")));
    }
    let n = ts.len() as f64;
    let t_mean = ts.iter().sum::<f64>() / n;
    let y: Vec<f64> = vs.iter().map(|v| v.ln()).collect();
    let y_mean = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, yi) in ts.iter().zip(y.iter()) {
        num += (t - t_mean) * (yi - y_mean);
        den += (t - t_mean) * (t - t_mean);
    }
    if den == 0.0 {
        return Err(Error::DegenerateFit("zero time variance in fit window".into()));
    }
    Ok(num / den)
}

/// Fits the decay rate of `V(t) = |v(t)| + |w(t)|` on a time window.
pub fn decay_rate_fit(traj: &Trajectory, window: (f64, f64)) -> Result<f64> {
    let (t_start, t_end) = window;
    if t_start >= t_end
        || t_start.is_nan()
        || t_end.is_nan()
        || t_start < -1e-12
        || t_end > traj.grid.horizon + 1e-9
    {
        return Err(Error::Domain(format!(
            "fit window ({t_start}, {t_end}) is not inside the horizon [0, {}]",
            traj.grid.horizon
        )));
    }
    let mut ts = Vec::new();
    let mut vs = Vec::new();
    for (n, &t) in traj.grid.t_nodes.iter().enumerate() {
        if t >= t_start - 1e-12 && t <= t_end + 1e-12 {
            ts.push(t);
            vs.push(traj.total_norm(n));
        }
    }
    if ts.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "window ({t_start}, {t_end}) contains only {} samples",
            ts.len()
        )));
    }
    fit_log_slope(&ts, &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretization::{build_grid, build_system};
    use crate::simulator::{run, sample_initial, InitialProfile, Mode};

    fn paper() -> SystemParams {
        SystemParams::paper_defaults()
    }

    #[test]
    fn decoupled_spectrum_is_diagonal() {
        let p = SystemParams { rho: 1e-300, gamma: 1e-300, ..paper() };
        // With rho*gamma ~ 0 the eigenvalues collapse to -(kappa + n^2 pi^2)
        // and -delta.
        let s = mode_spectrum(2, &p, false).unwrap();
        let want_fast = -(p.a + 4.0 * PI * PI);
        assert!((s.mu_n - want_fast).abs() < 1e-9);
        assert!((s.lambda_n - (-p.delta)).abs() < 1e-9);
    }

    #[test]
    fn first_mode_eigenvalues_match_reference() {
        let s = mode_spectrum(1, &paper(), false).unwrap();
        assert!((s.lambda_n - 0.4322).abs() < 5e-4, "lambda_1 = {}", s.lambda_n);
        assert!((s.mu_n - (-0.3018)).abs() < 5e-4, "mu_1 = {}", s.mu_n);
        assert!(s.lambda_n > s.mu_n);
    }

    #[test]
    fn spectrum_satisfies_characteristic_polynomial() {
        // Eigenvalues of [[-(kappa + n^2 pi^2), -rho], [gamma, -delta]].
        let p = paper();
        for use_damping in [false, true] {
            for n in 1..=6 {
                let s = mode_spectrum(n, &p, use_damping).unwrap();
                let kappa = if use_damping { p.lambda_damp } else { p.a };
                let a11 = -(kappa + (n * n) as f64 * PI * PI);
                let trace = a11 - p.delta;
                let det = a11 * (-p.delta) + p.rho * p.gamma;
                for lam in [s.lambda_n, s.mu_n] {
                    let residual = lam * lam - trace * lam + det;
                    assert!(residual.abs() < 1e-10, "mode {n}: residual {residual}");
                }
            }
        }
    }

    #[test]
    fn eigenvalue_asymptotics() {
        // The unshifted slow eigenvalue behaves like -rho gamma / (n^2 pi^2)
        // for large n; mode_spectrum returns the delta-shifted spectrum, so
        // correct for the shift before comparing.
        let p = paper();
        let s = mode_spectrum(20, &p, false).unwrap();
        let n2pi2 = 400.0 * PI * PI;
        assert!(((s.lambda_n + p.delta) * n2pi2 / (p.rho * p.gamma) + 1.0).abs() <= 0.1);
        // With negligible delta the shift disappears and the raw form holds.
        let p0 = SystemParams { delta: 1e-12, ..paper() };
        let s0 = mode_spectrum(20, &p0, false).unwrap();
        assert!((s0.lambda_n * n2pi2 / (p0.rho * p0.gamma) + 1.0).abs() <= 0.1);
    }

    #[test]
    fn spectrum_rejects_complex_regime() {
        let p = SystemParams { rho: 100.0, gamma: 100.0, a: 0.0, ..paper() };
        assert!(mode_spectrum(1, &p, false).is_err());
        assert!(mode_spectrum(0, &paper(), false).is_err());
    }

    #[test]
    fn instability_examples() {
        assert!(instability_check(&paper()));
        let stable = SystemParams { a: 1.0, ..paper() };
        assert!(!instability_check(&stable));
        let decoupled = SystemParams { a: 1.0, rho: 1e-9, gamma: 1e-9, ..paper() };
        assert!(!instability_check(&decoupled));
    }

    #[test]
    fn instability_agrees_with_first_eigenvalue() {
        // Deterministic parameter scan across the real-spectrum regime.
        let mut lcg = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (lcg >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut checked = 0;
        while checked < 1000 {
            let p = SystemParams {
                a: -20.0 + 25.0 * next(),
                rho: 0.1 + 2.0 * next(),
                gamma: 0.1 + 2.0 * next(),
                delta: 0.1 + 2.0 * next(),
                ..paper()
            };
            let s = p.a + PI * PI - p.delta;
            if s * s - 4.0 * p.rho * p.gamma <= 0.0 {
                continue;
            }
            let lam1 = mode_spectrum(1, &p, false).unwrap().lambda_n;
            assert_eq!(instability_check(&p), lam1 > 0.0, "params {p:?}");
            checked += 1;
        }
    }

    #[test]
    fn iss_gain_reference_value() {
        let v = iss_gain(&paper()).unwrap();
        assert!((v - 4.459).abs() < 1e-3, "vartheta = {v}");
    }

    #[test]
    fn iss_gain_closed_form_limit() {
        // epsilon -> delta with lambda = delta and rho*gamma -> 0:
        // vartheta -> (2 pi^2 / pi^4)(1 + 1/delta + 1/(pi^2 + delta)).
        let delta = 1.0;
        let p = SystemParams {
            lambda_damp: delta,
            delta,
            rho: 1e-12,
            gamma: 1e-12,
            epsilon: delta - 1e-12,
            ..paper()
        };
        let want = 2.0 / (PI * PI) * (1.0 + 1.0 / delta + 1.0 / (PI * PI + delta));
        assert!((iss_gain(&p).unwrap() - want).abs() < 1e-6);
    }

    #[test]
    fn iss_gain_monotone_in_epsilon() {
        let mut prev = f64::INFINITY;
        for i in 1..50 {
            let eps = i as f64 / 50.0;
            let p = SystemParams { epsilon: eps, ..paper() };
            let v = iss_gain(&p).unwrap();
            assert!(v < prev, "vartheta must decrease in epsilon");
            prev = v;
        }
    }

    #[test]
    fn iss_gain_domain_errors() {
        assert!(iss_gain(&SystemParams { epsilon: 1.5, ..paper() }).is_err());
        assert!(iss_gain(&SystemParams { epsilon: 0.0, ..paper() }).is_err());
        assert!(iss_gain(&SystemParams { rho: 50.0, gamma: 50.0, ..paper() }).is_err());
    }

    #[test]
    fn certificate_arithmetic() {
        assert_eq!(certificate_phi(0.0, 30.0, 6.6, 2.2), 0.0);
        let phi = certificate_phi(0.001, 30.0206, 6.5968, 2.2302);
        assert!((phi - 0.8834).abs() < 5e-4, "phi = {phi}");
        let phi_large = certificate_phi(0.05, 30.0206, 6.5968, 2.2302);
        assert!(phi_large > 1.0 && (phi_large - 44.2).abs() < 0.1);
    }

    #[test]
    fn sup_norm_constant_collapses_and_grows() {
        let p = paper();
        assert!((sup_norm_constant(&p, 0.0, 0.0) - SQRT_2).abs() < 1e-15);
        let m1 = sup_norm_constant(&p, 6.5968, 0.5);
        let m2 = sup_norm_constant(&p, 6.5968, 1.0);
        assert!(m2 > m1);
    }

    #[test]
    fn gronwall_policy_value() {
        assert_eq!(gronwall_c(&paper()), 1.0 + 1.0 + 2.0 + 11.0);
    }

    #[test]
    fn dwell_time_paper_setup() {
        let params = SystemParams { beta: 0.05, ..paper() };
        let (tau, k) = dwell_time_bound(&params, params.kernel_params(), 200).unwrap();
        assert!(tau > 0.0);
        assert!(k.a0 > 0.0 && k.a1 > 0.0 && k.a2 > 0.0 && k.c > 0.0);
        assert!(k.n_trunc <= 200);
        // Root residual: alpha(tau) = a0 to relative 1e-10, and slightly
        // smaller arguments fall short.
        let alpha = |s: f64| k.a1 * s + k.a2 * s * (0.5 * k.c * s).exp();
        assert!((alpha(tau) - k.a0).abs() <= 1e-10 * k.a0);
        assert!(alpha(tau * (1.0 - 1e-6)) < k.a0);
    }

    #[test]
    fn dwell_time_requires_positive_beta_and_reports_cap() {
        let params = paper(); // beta = 0.001: tail decays like 1/n, cap far too small
        assert!(matches!(
            dwell_time_bound(&SystemParams { beta: 0.0, ..params }, params.kernel_params(), 10),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            dwell_time_bound(&params, params.kernel_params(), 50),
            Err(Error::TruncationCap { .. })
        ));
    }

    #[test]
    fn dwell_time_scales_with_margin() {
        let params = SystemParams { beta: 0.05, ..paper() };
        let (_, k) = dwell_time_bound(&params, params.kernel_params(), 200).unwrap();
        let doubled = DwellTimeConstants { a0: 2.0 * k.a0, ..k };
        let tau1 = solve_dwell_root(&k).unwrap();
        let tau2 = solve_dwell_root(&doubled).unwrap();
        assert!(tau2 > tau1);
    }

    #[test]
    fn fit_recovers_exact_exponential() {
        let ts: Vec<f64> = (0..60).map(|i| 0.1 * i as f64).collect();
        let vs: Vec<f64> = ts.iter().map(|t| (-2.0 * t).exp()).collect();
        let slope = fit_log_slope(&ts, &vs).unwrap();
        assert!((slope + 2.0).abs() < 1e-10);
    }

    #[test]
    fn fit_rejects_degenerate_input() {
        assert!(fit_log_slope(&[0.0], &[1.0]).is_err());
        assert!(fit_log_slope(&[0.0, 1.0], &[1.0, -1.0]).is_err());
        assert!(fit_log_slope(&[1.0, 1.0, 1.0], &[1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn decay_rate_fit_on_trajectory() {
        let params = paper();
        let grid = build_grid(20, 400, 4.0).unwrap();
        let sys = build_system(&grid, &params).unwrap();
        let (v0, w0) = sample_initial(&grid, &InitialProfile::PaperDefault).unwrap();
        let (traj, _) = run(&sys, &grid, &params, (&v0, &w0), Mode::Uncontrolled).unwrap();
        let slope = decay_rate_fit(&traj, (2.0, 4.0)).unwrap();
        assert!(slope > 0.0, "uncontrolled system must grow, slope = {slope}");
        // Window errors
        assert!(decay_rate_fit(&traj, (3.0, 3.0)).is_err());
        assert!(decay_rate_fit(&traj, (0.0, 10.0)).is_err());
        assert!(decay_rate_fit(&traj, (2.0, 2.001)).is_err());
    }

    #[test]
    fn decay_rate_fit_rejects_zero_norms() {
        let params = paper();
        let grid = build_grid(10, 20, 1.0).unwrap();
        let sys = build_system(&grid, &params).unwrap();
        let zeros = vec![0.0; 10];
        let (traj, _) = run(&sys, &grid, &params, (&zeros, &zeros), Mode::Uncontrolled).unwrap();
        assert!(matches!(decay_rate_fit(&traj, (0.0, 1.0)), Err(Error::DegenerateFit(_))));
    }
}
