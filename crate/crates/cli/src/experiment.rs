//! Single runs, sweeps, and certificate-only evaluation on top of the core
//! simulator.

use crate::config::ExperimentConfig;
use crate::output::{
    fmt_f64, write_control, write_events, write_norms, write_trajectory, JsonObject,
};
use crate::{CliError, Result};
use fhn_etc::{
    build_grid, build_system, certificate_phi, decay_rate_fit, dwell_time_bound, gronwall_c,
    instability_check, iss_gain, mode_spectrum, run, sample_initial, transform_matrices,
    DwellTimeConstants, Error as CoreError, Mode,
};
use std::path::{Path, PathBuf};

/// Mode cap for the dwell-time truncation. The gain trace has a nonzero
/// boundary value, so its sine coefficients decay like 1/n; very small
/// trigger parameters cannot reach a positive margin under this cap and
/// the summary then reports a null `tau`.
pub const DWELL_CAP: usize = 200;

/// Quantities reported in `summary.json`.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub mode: Mode,
    pub decay_slope: Option<f64>,
    pub fit_window: (f64, f64),
    pub trigger_count: usize,
    pub min_gap: Option<f64>,
    pub mean_gap: Option<f64>,
    pub vartheta: Option<f64>,
    pub phi_e: Option<f64>,
    pub tau: Option<f64>,
    pub dwell: Option<DwellTimeConstants>,
    pub lambda_1: Option<f64>,
    pub unstable: bool,
    pub gain_norm: f64,
    pub pi_inv_norm: f64,
    pub gronwall_c: f64,
    pub out_dir: PathBuf,
}

/// Certificate quantities printed by `certify` (no simulation involved).
#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub vartheta: Option<f64>,
    pub phi_e: Option<f64>,
    pub tau: Option<f64>,
    pub tau_note: Option<String>,
    pub lambda_1: Option<f64>,
    pub unstable: bool,
    pub gain_norm: f64,
    pub pi_inv_norm: f64,
}

fn certificates(cfg: &ExperimentConfig) -> Result<CertifyReport> {
    let grid = build_grid(cfg.n_interior, cfg.n_steps, cfg.horizon)?;
    let sys = build_system(&grid, &cfg.params)?;
    let gain_norm = sys.gain_norm();
    let transforms = transform_matrices(&grid, cfg.params.kernel_params());
    let vartheta = iss_gain(&cfg.params).ok();
    let phi_e =
        vartheta.map(|v| certificate_phi(cfg.params.beta, v, gain_norm, transforms.pi_inv_norm));
    let lambda_1 = mode_spectrum(1, &cfg.params, false).ok().map(|s| s.lambda_n);
    let (tau, tau_note) = if cfg.params.beta > 0.0 {
        match dwell_time_bound(&cfg.params, cfg.params.kernel_params(), DWELL_CAP) {
            Ok((tau, _)) => (Some(tau), None),
            Err(err @ CoreError::TruncationCap { .. }) => (None, Some(err.to_string())),
            Err(other) => return Err(other.into()),
        }
    } else {
        (None, Some("beta = 0: dwell-time bound undefined".into()))
    };
    Ok(CertifyReport {
        vartheta,
        phi_e,
        tau,
        tau_note,
        lambda_1,
        unstable: instability_check(&cfg.params),
        gain_norm,
        pi_inv_norm: transforms.pi_inv_norm,
    })
}

/// Runs one experiment into `<out_dir>/<mode>/`.
pub fn run_single(cfg: &ExperimentConfig) -> Result<RunSummary> {
    let dir = cfg.out_dir.join(cfg.mode.as_str());
    run_into(cfg, &dir)
}

/// Runs one experiment, writing all artifacts into `dir`.
pub fn run_into(cfg: &ExperimentConfig, dir: &Path) -> Result<RunSummary> {
    std::fs::create_dir_all(dir)?;
    let grid = build_grid(cfg.n_interior, cfg.n_steps, cfg.horizon)?;
    let sys = build_system(&grid, &cfg.params)?;
    let (v0, w0) = sample_initial(&grid, &cfg.profile)?;
    let (traj, events) = run(&sys, &grid, &cfg.params, (&v0, &w0), cfg.mode)?;

    write_trajectory(&dir.join("trajectory.csv"), &traj)?;
    write_norms(&dir.join("norms.csv"), &traj)?;
    write_control(&dir.join("control.csv"), &traj, &events)?;
    write_events(&dir.join("events.csv"), &events)?;

    let fit_window = (cfg.horizon / 2.0, cfg.horizon);
    let decay_slope = decay_rate_fit(&traj, fit_window).ok();
    let cert = certificates(cfg)?;
    let dwell = if cfg.params.beta > 0.0 {
        dwell_time_bound(&cfg.params, cfg.params.kernel_params(), DWELL_CAP)
            .ok()
            .map(|(_, k)| k)
    } else {
        None
    };

    let summary = RunSummary {
        mode: cfg.mode,
        decay_slope,
        fit_window,
        trigger_count: events.trigger_count(),
        min_gap: events.min_gap(),
        mean_gap: events.mean_gap(),
        vartheta: cert.vartheta,
        phi_e: cert.phi_e,
        tau: cert.tau,
        dwell,
        lambda_1: cert.lambda_1,
        unstable: cert.unstable,
        gain_norm: cert.gain_norm,
        pi_inv_norm: cert.pi_inv_norm,
        gronwall_c: gronwall_c(&cfg.params),
        out_dir: dir.to_path_buf(),
    };
    std::fs::write(dir.join("summary.json"), summary_json(cfg, &summary))?;
    Ok(summary)
}

fn summary_json(cfg: &ExperimentConfig, s: &RunSummary) -> String {
    let mut params = JsonObject::new();
    params
        .number("a", cfg.params.a)
        .number("rho", cfg.params.rho)
        .number("gamma", cfg.params.gamma)
        .number("delta", cfg.params.delta)
        .number("lambda", cfg.params.lambda_damp)
        .number("beta", cfg.params.beta)
        .number("epsilon", cfg.params.epsilon);

    let mut grid = JsonObject::new();
    grid.integer("n", cfg.n_interior as u64)
        .integer("m", cfg.n_steps as u64)
        .number("t", cfg.horizon);

    let dwell = s.dwell.as_ref().map(|k| {
        let mut obj = JsonObject::new();
        obj.number("a0", k.a0)
            .number("a1", k.a1)
            .number("a2", k.a2)
            .number("c", k.c)
            .number("f_n", k.f_n)
            .number("g_n", k.g_n)
            .integer("n_trunc", k.n_trunc as u64);
        obj.finish_inline()
    });

    let mut obj = JsonObject::new();
    obj.string("mode", s.mode.as_str())
        .raw("params", &params.finish_inline())
        .raw("grid", &grid.finish_inline())
        .opt_number("decay_slope", s.decay_slope)
        .raw(
            "fit_window",
            &format!("[{}, {}]", fmt_f64(s.fit_window.0), fmt_f64(s.fit_window.1)),
        )
        .integer("trigger_count", s.trigger_count as u64)
        .opt_number("min_gap", s.min_gap)
        .opt_number("mean_gap", s.mean_gap)
        .opt_number("vartheta", s.vartheta)
        .opt_number("phi_e", s.phi_e)
        .opt_number("tau", s.tau);
    match dwell {
        Some(text) => obj.raw("dwell", &text),
        None => obj.raw("dwell", "null"),
    };
    obj.opt_number("lambda_1", s.lambda_1)
        .boolean("unstable", s.unstable)
        .number("gain_norm", s.gain_norm)
        .number("pi_inv_norm", s.pi_inv_norm)
        .number("gronwall_c", s.gronwall_c);
    obj.finish()
}

/// Runs one experiment per sweep value (concurrently; each run owns its
/// directory), then writes `sweep_index.csv` at the output root.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<(f64, RunSummary)>> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Invalid("config has no sweep axis".into()))?;

    let runs: Vec<(f64, ExperimentConfig, PathBuf)> = sweep
        .values
        .iter()
        .map(|&value| {
            let mut derived = cfg.clone();
            derived.params = sweep.axis.apply(&cfg.params, value);
            derived.sweep = None;
            let dir = cfg
                .out_dir
                .join(format!("{}_{}={}", cfg.mode.as_str(), sweep.axis.key(), value));
            (value, derived, dir)
        })
        .collect();

    let mut results: Vec<Option<Result<RunSummary>>> = Vec::new();
    results.resize_with(runs.len(), || None);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (slot, (_, derived, dir)) in results.iter_mut().zip(&runs) {
            handles.push(scope.spawn(move || {
                *slot = Some(run_into(derived, dir));
            }));
        }
        for handle in handles {
            handle.join().expect("sweep worker panicked");
        }
    });

    std::fs::create_dir_all(&cfg.out_dir)?;
    let mut index = String::from("param,value,dir\n");
    let mut summaries = Vec::new();
    for ((value, _, dir), outcome) in runs.into_iter().zip(results) {
        let summary = outcome.expect("worker ran")?;
        index.push_str(&format!(
            "{},{},{}\n",
            sweep.axis.key(),
            fmt_f64(value),
            dir.display()
        ));
        summaries.push((value, summary));
    }
    std::fs::write(cfg.out_dir.join("sweep_index.csv"), index)?;
    Ok(summaries)
}

/// Evaluates the certificates without simulating.
pub fn certify(cfg: &ExperimentConfig) -> Result<CertifyReport> {
    certificates(cfg)
}

/// CSV lines `x, k1x` with the gain trace at the interior nodes.
pub fn kernel_table(cfg: &ExperimentConfig) -> Result<String> {
    let grid = build_grid(cfg.n_interior, cfg.n_steps, cfg.horizon)?;
    let gains = fhn_etc::gain_vector(&grid, cfg.params.kernel_params());
    let mut out = String::from("x,k1x\n");
    for (x, k) in grid.x_nodes.iter().zip(gains.iter()) {
        out.push_str(&format!("{},{}\n", fmt_f64(*x), fmt_f64(*k)));
    }
    Ok(out)
}
