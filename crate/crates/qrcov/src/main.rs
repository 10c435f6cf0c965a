//! Thin command-line front end; all logic lives in the library's [`cli`]
//! module so the runnable examples can reuse it.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use qrcov::cli::{self, CovarianceArgs, DecomposeArgs, GaussianArgs, Manifest, TransformKind};
use qrcov::freefall::time_linspace;
use qrcov::scenarios::TwoSlitConfig;
use qrcov::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qrcov",
    version,
    about = "Quantum-resource accounting across reference frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a state's information into quantumness and incompatible
    /// quantumness for a basis pair, emitting the full report as JSON.
    Decompose {
        /// Built-in state: bell, product, mixed, or random.
        #[arg(long, conflicts_with = "state")]
        scenario: Option<String>,
        /// Plain-text state file (`dims:` header plus matrix rows).
        #[arg(long)]
        state: Option<PathBuf>,
        /// Subsystem dimensions for scenario states, e.g. `2x2` or `3x4`.
        #[arg(long, default_value = "2x2")]
        dims: String,
        /// Mixture rank for the random scenario.
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Observable set, one letter per subsystem (Z or X).
        #[arg(long, default_value = "ZZ")]
        basis: String,
        /// Maximally unbiased partner set.
        #[arg(long, default_value = "XX")]
        mu: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Fuzz the covariance identity over seeded frame changes and report the
    /// worst total-resource gap.
    CovarianceCheck {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Subsystem dimensions for random-unitary trials.
        #[arg(long, default_value = "2x2")]
        dims: String,
        /// Frame-change family: random-unitary or lattice-swap.
        #[arg(long, default_value = "random-unitary")]
        transform: String,
        /// Lattice half-widths for lattice-swap trials.
        #[arg(long = "l", num_args = 1.., value_delimiter = ',', default_values_t = [3usize, 5])]
        lattice_half_widths: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the two-particle free-fall simulation and write the per-time-step
    /// resource split as CSV (with a manifest sidecar).
    Freefall {
        /// Flat key=value config file; flags below override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
        /// Boundary handling: wrap or truncate.
        #[arg(long)]
        boundary: Option<String>,
        #[arg(long)]
        half_width: Option<usize>,
        #[arg(long)]
        d_bar: Option<f64>,
        #[arg(long)]
        sigma_cm_bar: Option<f64>,
        #[arg(long)]
        sigma_r_bar: Option<f64>,
        #[arg(long)]
        mass_a_kg: Option<f64>,
        #[arg(long)]
        mass_b_kg: Option<f64>,
        #[arg(long)]
        tau_s: Option<f64>,
        #[arg(long)]
        g_m_per_s2: Option<f64>,
        #[arg(long)]
        t_bar_max: Option<f64>,
        #[arg(long)]
        t_bar_steps: Option<usize>,
        #[arg(long)]
        leak_threshold: Option<f64>,
    },
    /// Evaluate the two-slit reality diagnostics in both frames.
    TwoSlit {
        #[arg(long)]
        i: i64,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        k: i64,
        /// Lattice half-width.
        #[arg(long, default_value_t = 7)]
        l: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Transform a product Gaussian state and report its residual
    /// entanglement and crossing-term parameters.
    GaussianTransform {
        /// Center of packet A.
        #[arg(long)]
        a: f64,
        /// Center of packet B.
        #[arg(long, default_value_t = 0.0)]
        b: f64,
        /// Position width Δ of packet A.
        #[arg(long)]
        big_delta: f64,
        /// Position width δ of packet B.
        #[arg(long)]
        delta: f64,
        /// position-swap or momentum-swap.
        #[arg(long, default_value = "position-swap")]
        transform: String,
        #[arg(long, default_value_t = 1.0)]
        mass_a: f64,
        #[arg(long, default_value_t = 1.0)]
        mass_b: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(report_json: String, output: Option<&PathBuf>, manifest: Manifest) -> Result<()> {
    match output {
        Some(path) => cli::write_with_manifest(path, &report_json, &manifest),
        None => {
            print!("{report_json}");
            Ok(())
        }
    }
}

fn run(command: Command, started: Instant) -> Result<()> {
    match command {
        Command::Decompose {
            scenario,
            state,
            dims,
            rank,
            seed,
            basis,
            mu,
            output,
        } => {
            let args = DecomposeArgs {
                scenario,
                state_file: state,
                dims: cli::parse_dims_spec(&dims)?,
                rank,
                seed,
                basis_spec: basis,
                mu_spec: mu,
            };
            let report = cli::run_decompose(&args)?;
            let mut manifest = Manifest::new(
                "decompose",
                serde_json::json!({
                    "scenario": args.scenario,
                    "state_file": args.state_file,
                    "dims": dims,
                    "rank": rank,
                    "basis": args.basis_spec,
                    "mu": args.mu_spec,
                }),
            );
            manifest.seed = Some(seed);
            manifest.duration_seconds = started.elapsed().as_secs_f64();
            emit(cli::to_json(&report)?, output.as_ref(), manifest)
        }
        Command::CovarianceCheck {
            trials,
            dims,
            transform,
            lattice_half_widths,
            seed,
            output,
        } => {
            let args = CovarianceArgs {
                trials,
                dims: cli::parse_dims_spec(&dims)?,
                transform: transform.parse::<TransformKind>()?,
                lattice_half_widths,
                seed,
            };
            let summary = cli::run_covariance(&args)?;
            let mut manifest = Manifest::new(
                "covariance-check",
                serde_json::json!({
                    "trials": trials,
                    "dims": dims,
                    "transform": transform,
                    "lattice_half_widths": args.lattice_half_widths,
                }),
            );
            manifest.seed = Some(seed);
            manifest.duration_seconds = started.elapsed().as_secs_f64();
            emit(cli::to_json(&summary)?, output.as_ref(), manifest)?;
            if !summary.pass {
                return Err(Error::Inconsistency(format!(
                    "covariance gap {:.3e} exceeds {:.1e}",
                    summary.max_gap, summary.gap_tolerance
                )));
            }
            Ok(())
        }
        Command::Freefall {
            config,
            output,
            boundary,
            half_width,
            d_bar,
            sigma_cm_bar,
            sigma_r_bar,
            mass_a_kg,
            mass_b_kg,
            tau_s,
            g_m_per_s2,
            t_bar_max,
            t_bar_steps,
            leak_threshold,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    cli::freefall_config_from_kv(&cli::parse_kv(&std::fs::read_to_string(path)?)?)?
                }
                None => qrcov::freefall::FreefallConfig::default(),
            };
            if let Some(b) = boundary {
                cfg.boundary = b.parse()?;
            }
            if let Some(v) = half_width {
                cfg.half_width = v;
            }
            if let Some(v) = d_bar {
                cfg.d_bar = v;
            }
            if let Some(v) = sigma_cm_bar {
                cfg.sigma_cm_bar = v;
            }
            if let Some(v) = sigma_r_bar {
                cfg.sigma_r_bar = v;
            }
            if let Some(v) = mass_a_kg {
                cfg.mass_a_kg = v;
            }
            if let Some(v) = mass_b_kg {
                cfg.mass_b_kg = v;
            }
            if let Some(v) = tau_s {
                cfg.tau_s = v;
            }
            if let Some(v) = g_m_per_s2 {
                cfg.g_m_per_s2 = v;
            }
            if t_bar_max.is_some() || t_bar_steps.is_some() {
                cfg.time_grid =
                    time_linspace(0.0, t_bar_max.unwrap_or(8.0), t_bar_steps.unwrap_or(50));
            }
            if let Some(v) = leak_threshold {
                cfg.leak_threshold = v;
            }
            cfg.validate()?;
            cli::run_freefall(&cfg, &output, started)
        }
        Command::TwoSlit { i, j, k, l, output } => {
            let cfg = TwoSlitConfig::new(l, i, j, k)?;
            let report = cli::run_two_slit(&cfg)?;
            let mut manifest = Manifest::new(
                "two-slit",
                serde_json::json!({ "half_width": l, "i": i, "j": j, "k": k }),
            );
            manifest.duration_seconds = started.elapsed().as_secs_f64();
            emit(cli::to_json(&report)?, output.as_ref(), manifest)
        }
        Command::GaussianTransform {
            a,
            b,
            big_delta,
            delta,
            transform,
            mass_a,
            mass_b,
            hbar,
            output,
        } => {
            let args = GaussianArgs {
                center_a: a,
                center_b: b,
                width_a: big_delta,
                width_b: delta,
                transform: transform.parse()?,
                mass_a,
                mass_b,
                hbar,
            };
            let report = cli::run_gaussian(&args)?;
            let mut manifest = Manifest::new(
                "gaussian-transform",
                serde_json::json!({
                    "a": a, "b": b, "big_delta": big_delta, "delta": delta,
                    "transform": transform, "mass_a": mass_a, "mass_b": mass_b, "hbar": hbar,
                }),
            );
            manifest.duration_seconds = started.elapsed().as_secs_f64();
            emit(cli::to_json(&report)?, output.as_ref(), manifest)
        }
    }
}

fn main() {
    let started = Instant::now();
    let cli = Cli::parse();
    if let Err(err) = run(cli.command, started) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
