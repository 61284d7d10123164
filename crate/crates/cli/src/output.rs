//! Deterministic emission of run artifacts. All floats are written with 17
//! significant decimal digits, which round-trip to the exact `f64` bits, so
//! regression tests can diff files directly.

use fhn_etc::{discrete_l2_norm, EventLog, Trajectory};
use std::io::{BufWriter, Write};
use std::path::Path;

/// 17-significant-digit scientific form; parses back to the same bits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn open(path: &Path) -> std::io::Result<BufWriter<std::fs::File>> {
    Ok(BufWriter::new(std::fs::File::create(path)?))
}

/// `trajectory.csv`: one row per time node and interior node, columns
/// `t, x_index, v, w` with 1-based `x_index` (node `x_i = i h`).
pub fn write_trajectory(path: &Path, traj: &Trajectory) -> std::io::Result<()> {
    let mut out = open(path)?;
    writeln!(out, "t,x_index,v,w")?;
    for (n, snap) in traj.snapshots.iter().enumerate() {
        let t = traj.grid.t_nodes[n];
        for i in 0..traj.grid.n_interior {
            writeln!(
                out,
                "{},{},{},{}",
                fmt_f64(t),
                i + 1,
                fmt_f64(snap.v[i]),
                fmt_f64(snap.w[i])
            )?;
        }
    }
    out.flush()
}

/// `norms.csv`: columns `t, v_norm, w_norm, total`.
pub fn write_norms(path: &Path, traj: &Trajectory) -> std::io::Result<()> {
    let mut out = open(path)?;
    writeln!(out, "t,v_norm,w_norm,total")?;
    let h = traj.grid.h;
    for (n, snap) in traj.snapshots.iter().enumerate() {
        let nv = discrete_l2_norm(&snap.v, h);
        let nw = discrete_l2_norm(&snap.w, h);
        writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(traj.grid.t_nodes[n]),
            fmt_f64(nv),
            fmt_f64(nw),
            fmt_f64(nv + nw)
        )?;
    }
    out.flush()
}

/// `control.csv`: columns `t, q, is_trigger`. Row `n` (1-based) carries the
/// control applied on the step ending at `t_n`; `is_trigger` marks rows
/// whose instant is a logged event.
pub fn write_control(path: &Path, traj: &Trajectory, events: &EventLog) -> std::io::Result<()> {
    let mut out = open(path)?;
    writeln!(out, "t,q,is_trigger")?;
    let dt = traj.grid.dt;
    let trigger_steps: Vec<usize> = events.trigger_times[1..]
        .iter()
        .map(|&t| (t / dt).round() as usize)
        .collect();
    for (idx, &q) in traj.controls.iter().enumerate() {
        let step = idx + 1;
        let is_trigger = u8::from(trigger_steps.contains(&step));
        writeln!(
            out,
            "{},{},{}",
            fmt_f64(traj.grid.t_nodes[step]),
            fmt_f64(q),
            is_trigger
        )?;
    }
    out.flush()
}

/// `events.csv`: columns `j, t_j, gap` with the forward gap
/// `t_{j+1} - t_j`; the last event has no successor and an empty gap cell.
pub fn write_events(path: &Path, events: &EventLog) -> std::io::Result<()> {
    let mut out = open(path)?;
    writeln!(out, "j,t_j,gap")?;
    for (j, &t) in events.trigger_times.iter().enumerate() {
        let gap = events
            .gaps
            .get(j)
            .map(|&g| fmt_f64(g))
            .unwrap_or_default();
        writeln!(out, "{},{},{}", j, fmt_f64(t), gap)?;
    }
    out.flush()
}

/// Incremental JSON object writer with fixed key order and [`fmt_f64`]
/// number formatting.
pub struct JsonObject {
    buf: String,
    first: bool,
}

impl JsonObject {
    pub fn new() -> Self {
        JsonObject { buf: String::from("{"), first: true }
    }

    fn key(&mut self, name: &str) {
        if !self.first {
            self.buf.push(',');
        }
        self.first = false;
        self.buf.push('\n');
        self.buf.push_str("  \"");
        self.buf.push_str(name);
        self.buf.push_str("\": ");
    }

    pub fn number(&mut self, name: &str, value: f64) -> &mut Self {
        self.key(name);
        self.buf.push_str(&fmt_f64(value));
        self
    }

    pub fn opt_number(&mut self, name: &str, value: Option<f64>) -> &mut Self {
        self.key(name);
        match value {
            Some(v) => self.buf.push_str(&fmt_f64(v)),
            None => self.buf.push_str("null"),
        }
        self
    }

    pub fn integer(&mut self, name: &str, value: u64) -> &mut Self {
        self.key(name);
        self.buf.push_str(&value.to_string());
        self
    }

    pub fn boolean(&mut self, name: &str, value: bool) -> &mut Self {
        self.key(name);
        self.buf.push_str(if value { "true" } else { "false" });
        self
    }

    pub fn string(&mut self, name: &str, value: &str) -> &mut Self {
        self.key(name);
        self.buf.push('"');
        // Keys and values here are mode names and paths; escape the two
        // characters that can actually occur.
        for ch in value.chars() {
            match ch {
                '"' => self.buf.push_str("\\\""),
                '\\' => self.buf.push_str("\\\\"),
                _ => self.buf.push(ch),
            }
        }
        self.buf.push('"');
        self
    }

    pub fn raw(&mut self, name: &str, value: &str) -> &mut Self {
        self.key(name);
        self.buf.push_str(value);
        self
    }

    pub fn finish(mut self) -> String {
        self.buf.push_str("\n}\n");
        self.buf
    }

    /// Object form without the trailing newline, for nesting via [`raw`].
    ///
    /// [`raw`]: JsonObject::raw
    pub fn finish_inline(mut self) -> String {
        self.buf.push_str("\n}");
        self.buf
    }
}

impl Default for JsonObject {
    fn default() -> Self {
        Self::new()
    }
}
