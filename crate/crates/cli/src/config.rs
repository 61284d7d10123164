//! Flat JSON configuration; every omitted field takes its default
//! experiment value.
//!
//! Recognized keys: `a`, `rho`, `gamma`, `delta`, `lambda`, `beta`,
//! `epsilon` (system parameters), `n`, `m`, `t` (grid), `mode`, `profile`
//! (plus `v0`/`w0` tables for the custom profile), `out_dir`,
//! `sweep_param`/`sweep_values`, and `seed` (reserved; unused by the
//! numerics). Unknown keys are rejected.

use crate::{CliError, Result};
use fhn_etc::{build_grid, InitialProfile, Mode, SystemParams};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    LambdaDamp,
    Beta,
    Epsilon,
}

impl SweepAxis {
    pub fn key(&self) -> &'static str {
        match self {
            SweepAxis::LambdaDamp => "lambda",
            SweepAxis::Beta => "beta",
            SweepAxis::Epsilon => "epsilon",
        }
    }

    fn parse(name: &str) -> Result<Self> {
        match name {
            "lambda" | "lambda_damp" => Ok(SweepAxis::LambdaDamp),
            "beta" => Ok(SweepAxis::Beta),
            "epsilon" => Ok(SweepAxis::Epsilon),
            other => Err(CliError::Invalid(format!(
                "sweep_param must be one of lambda, beta, epsilon; got {other:?}"
            ))),
        }
    }

    pub fn apply(&self, params: &SystemParams, value: f64) -> SystemParams {
        let mut p = *params;
        match self {
            SweepAxis::LambdaDamp => p.lambda_damp = value,
            SweepAxis::Beta => p.beta = value,
            SweepAxis::Epsilon => p.epsilon = value,
        }
        p
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub params: SystemParams,
    pub n_interior: usize,
    pub n_steps: usize,
    pub horizon: f64,
    pub mode: Mode,
    pub profile: InitialProfile,
    pub out_dir: PathBuf,
    pub sweep: Option<Sweep>,
    /// Reserved for future randomized features; the core math is
    /// deterministic and never reads it.
    pub seed: u64,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    a: Option<f64>,
    rho: Option<f64>,
    gamma: Option<f64>,
    delta: Option<f64>,
    lambda: Option<f64>,
    beta: Option<f64>,
    epsilon: Option<f64>,
    n: Option<usize>,
    m: Option<usize>,
    t: Option<f64>,
    mode: Option<String>,
    profile: Option<String>,
    v0: Option<Vec<f64>>,
    w0: Option<Vec<f64>>,
    out_dir: Option<PathBuf>,
    sweep_param: Option<String>,
    sweep_values: Option<Vec<f64>>,
    seed: Option<u64>,
}

/// Loads and fully validates a configuration file. An empty document (or
/// `{}`) yields the all-defaults configuration.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)?;
    from_json_str(&text)
}

/// Parses a configuration from a JSON string; see [`load_config`].
pub fn from_json_str(text: &str) -> Result<ExperimentConfig> {
    let raw: RawConfig = if text.trim().is_empty() {
        RawConfig::default()
    } else {
        serde_json::from_str(text)?
    };
    build(raw)
}

fn build(raw: RawConfig) -> Result<ExperimentConfig> {
    let defaults = SystemParams::paper_defaults();
    let params = SystemParams {
        a: raw.a.unwrap_or(defaults.a),
        rho: raw.rho.unwrap_or(defaults.rho),
        gamma: raw.gamma.unwrap_or(defaults.gamma),
        delta: raw.delta.unwrap_or(defaults.delta),
        lambda_damp: raw.lambda.unwrap_or(defaults.lambda_damp),
        beta: raw.beta.unwrap_or(defaults.beta),
        epsilon: raw.epsilon.unwrap_or(defaults.epsilon),
    };
    params.validate()?;

    let n_interior = raw.n.unwrap_or(40);
    let n_steps = raw.m.unwrap_or(2000);
    let horizon = raw.t.unwrap_or(6.0);
    build_grid(n_interior, n_steps, horizon)?;

    let mode: Mode = raw
        .mode
        .as_deref()
        .unwrap_or("event_triggered")
        .parse()?;

    let profile_name = raw.profile.as_deref().unwrap_or("paper_default");
    let profile = match profile_name {
        "custom" => {
            let v0 = raw.v0.ok_or_else(|| {
                CliError::Invalid("profile \"custom\" requires a v0 table".into())
            })?;
            let w0 = raw.w0.ok_or_else(|| {
                CliError::Invalid("profile \"custom\" requires a w0 table".into())
            })?;
            if v0.len() != n_interior || w0.len() != n_interior {
                return Err(CliError::Invalid(format!(
                    "custom profile tables must have length n = {n_interior}: \
                     v0 has {}, w0 has {}",
                    v0.len(),
                    w0.len()
                )));
            }
            InitialProfile::Custom { v0, w0 }
        }
        named => {
            if raw.v0.is_some() || raw.w0.is_some() {
                return Err(CliError::Invalid(
                    "v0/w0 tables are only accepted with profile \"custom\"".into(),
                ));
            }
            named.parse()?
        }
    };

    let sweep = match (raw.sweep_param, raw.sweep_values) {
        (None, None) => None,
        (Some(_), None) | (None, Some(_)) => {
            return Err(CliError::Invalid(
                "sweep_param and sweep_values must be given together".into(),
            ))
        }
        (Some(name), Some(values)) => {
            if values.is_empty() {
                return Err(CliError::Invalid("sweep_values must be nonempty".into()));
            }
            let axis = SweepAxis::parse(&name)?;
            for &value in &values {
                axis.apply(&params, value).validate().map_err(|e| {
                    CliError::Invalid(format!("sweep value {value} for {name}: {e}"))
                })?;
            }
            Some(Sweep { axis, values })
        }
    };

    Ok(ExperimentConfig {
        params,
        n_interior,
        n_steps,
        horizon,
        mode,
        profile,
        out_dir: raw.out_dir.unwrap_or_else(|| PathBuf::from("out")),
        sweep,
        seed: raw.seed.unwrap_or(0),
    })
}
