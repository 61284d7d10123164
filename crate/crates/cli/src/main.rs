use clap::{Parser, Subcommand};
use fhn_etc_cli::output::fmt_f64;
use fhn_etc_cli::{certify, kernel_table, load_config, run_single, run_sweep};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fhn-etc",
    about = "Event-triggered backstepping boundary control of the linearized \
             FitzHugh-Nagumo system: simulations, sweeps, and certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write trajectory/norms/control/events/summary
    /// artifacts into a per-mode directory.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override the configured mode (uncontrolled, continuous,
        /// event_triggered).
        #[arg(long)]
        mode: Option<String>,
        /// Override the configured output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one experiment per sweep value and write a sweep index.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the certificates (vartheta, Phi_e, tau, lambda_1) without
    /// simulating.
    Certify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the boundary gain trace k(1, x_i) as CSV.
    KernelTable {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> fhn_etc_cli::Result<()> {
    match cli.command {
        Command::Run { config, mode, out } => {
            let mut cfg = load_config(&config)?;
            if let Some(mode) = mode {
                cfg.mode = mode.parse()?;
            }
            if let Some(out) = out {
                cfg.out_dir = out;
            }
            let summary = run_single(&cfg)?;
            println!("wrote {}", summary.out_dir.display());
            if let Some(slope) = summary.decay_slope {
                println!("decay_slope = {}", fmt_f64(slope));
            }
            println!("trigger_count = {}", summary.trigger_count);
            Ok(())
        }
        Command::Sweep { config } => {
            let cfg = load_config(&config)?;
            let results = run_sweep(&cfg)?;
            for (value, summary) in &results {
                println!("{} -> {}", value, summary.out_dir.display());
            }
            println!("wrote {}", cfg.out_dir.join("sweep_index.csv").display());
            Ok(())
        }
        Command::Certify { config } => {
            let cfg = load_config(&config)?;
            let report = certify(&cfg)?;
            print_opt("vartheta", report.vartheta);
            print_opt("phi_e", report.phi_e);
            match (report.tau, &report.tau_note) {
                (Some(tau), _) => println!("tau = {}", fmt_f64(tau)),
                (None, Some(note)) => println!("tau = unavailable ({note})"),
                (None, None) => println!("tau = unavailable"),
            }
            print_opt("lambda_1", report.lambda_1);
            println!("unstable = {}", report.unstable);
            println!("gain_norm = {}", fmt_f64(report.gain_norm));
            println!("pi_inv_norm = {}", fmt_f64(report.pi_inv_norm));
            Ok(())
        }
        Command::KernelTable { config } => {
            let cfg = load_config(&config)?;
            print!("{}", kernel_table(&cfg)?);
            Ok(())
        }
    }
}

fn print_opt(name: &str, value: Option<f64>) {
    match value {
        Some(v) => println!("{name} = {}", fmt_f64(v)),
        None => println!("{name} = unavailable"),
    }
}
