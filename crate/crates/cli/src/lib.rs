//! Command-line front end: argument parsing, JSON configuration loading,
//! dispatch into the simulation library, and CSV file emission.
//!
//! Exit codes: 0 on success, 2 for configuration or usage problems (bad
//! flags, unreadable files, invalid keys or values), 3 for numeric or domain
//! failures (out of the antenna lobe, inside the far-field bound, series
//! breakdown).

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use spherecal_core::{
    far_field_min_range_m, format_value, mie_backscatter_rcs, pattern_factor, pattern_loss_db,
    regime_check, run_sweep, scene_state, series_terms, size_parameter, write_rows_csv,
    write_summary_csv, RegimeThresholds, SweepOutput, SweepRow,
};

pub mod config;

pub use config::{parse_config, RunConfig, DEFAULT_STANDOFFS_M};

/// Environment variable capping the evaluation thread count; `1` forces a
/// serial run. Output is byte-identical at any setting.
pub const THREADS_ENV: &str = "SPHERECAL_THREADS";

/// A failure mapped to a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Configuration or usage problem (exit 2).
    Config(String),
    /// Numeric or physical-domain failure (exit 3).
    Numeric(String),
    /// Filesystem problem (exit 2).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(message) | CliError::Numeric(message) | CliError::Io(message) => {
                f.write_str(message)
            }
        }
    }
}

impl From<spherecal_core::Error> for CliError {
    fn from(err: spherecal_core::Error) -> Self {
        match err {
            spherecal_core::Error::InvalidConfig { .. } => CliError::Config(err.to_string()),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "spherecal",
    version,
    about = "Swing-bias simulator for sphere-calibrated weather radar"
)]
pub struct Cli {
    /// JSON run configuration; library defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Directory that receives CSV outputs.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the swung scene geometry at one swing angle.
    Geom {
        /// Swing angle theta, degrees.
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        /// Override the standoff distance, meters.
        #[arg(long)]
        standoff: Option<f64>,
    },
    /// Print the antenna pattern weight and two-way loss at an off-axis angle.
    Pattern {
        /// Off-axis angle beta, degrees.
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
    },
    /// Print the sphere cross-section summary.
    Rcs,
    /// Evaluate the sweep and write sweep.csv and sweep_summary.csv.
    Sweep,
    /// Write the four per-quantity projections of one sweep plus its summary.
    Fig2,
    /// Print regime and far-field diagnostics for the configuration.
    Check,
}

/// Runs the CLI against the process arguments and returns its exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Runs the CLI against an explicit argument list (first item is the program
/// name) and returns its exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    if let Err(err) = init_threads() {
        eprintln!("error: {err}");
        return err.exit_code();
    }
    match execute(&cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

/// Applies the thread-count cap before any parallel evaluation starts.
fn init_threads() -> Result<(), CliError> {
    let Some(value) = std::env::var_os(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .to_str()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            CliError::Config(format!(
                "config error: {THREADS_ENV}: must be a positive integer (got {value:?})"
            ))
        })?;
    // A second initialization in the same process keeps the first pool; the
    // row order is deterministic either way.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    match &cli.config {
        None => Ok(RunConfig::default()),
        Some(path) => {
            let bytes = fs::read(path)
                .map_err(|e| CliError::Io(format!("io error: {}: {e}", path.display())))?;
            parse_config(&bytes)
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let run = load_config(cli)?;
    match cli.command {
        Command::Geom { theta, standoff } => cmd_geom(&run, theta, standoff),
        Command::Pattern { beta } => cmd_pattern(&run, beta),
        Command::Rcs => cmd_rcs(&run),
        Command::Sweep => cmd_sweep(&run, &cli.out),
        Command::Fig2 => cmd_fig2(&run, &cli.out),
        Command::Check => cmd_check(&run),
    }
}

fn print_kv(key: &str, value: f64) {
    println!("{key}={}", format_value(value));
}

fn cmd_geom(run: &RunConfig, theta_deg: f64, standoff_m: Option<f64>) -> Result<(), CliError> {
    let scene = match standoff_m {
        Some(standoff) => run.scene.with_standoff(standoff),
        None => run.scene.clone(),
    };
    let state = scene_state(&scene, theta_deg)?;
    print_kv("standoff_m", scene.standoff_distance_m);
    print_kv("theta_deg", state.theta_deg);
    print_kv("sphere_x_m", state.sphere_position_m[0]);
    print_kv("sphere_y_m", state.sphere_position_m[1]);
    print_kv("sphere_z_m", state.sphere_position_m[2]);
    print_kv("slant_range_m", state.slant_range_m);
    print_kv("beta_deg", state.off_axis_deg);
    Ok(())
}

fn cmd_pattern(run: &RunConfig, beta_deg: f64) -> Result<(), CliError> {
    let factor = pattern_factor(beta_deg, &run.pattern)?;
    let loss = pattern_loss_db(beta_deg, &run.pattern)?;
    print_kv("beta_deg", beta_deg);
    print_kv("first_null_deg", run.pattern.first_null_deg());
    print_kv("pattern_factor", factor);
    print_kv("pattern_loss_db", loss);
    Ok(())
}

fn cmd_rcs(run: &RunConfig) -> Result<(), CliError> {
    let x = size_parameter(run.target.radius_m, run.params.wavelength_m)?;
    let regime = regime_check(x, &RegimeThresholds::default())?;
    let mie = mie_backscatter_rcs(run.target.radius_m, run.params.wavelength_m)?;
    print_kv("sphere_radius_m", run.target.radius_m);
    print_kv("wavelength_m", run.params.wavelength_m);
    print_kv("size_parameter", x);
    println!("regime={}", regime.name());
    println!("series_terms={}", series_terms(x));
    print_kv("optical_rcs_m2", run.target.optical_rcs_m2);
    print_kv("mie_rcs_m2", mie);
    print_kv("normalized_rcs", mie / run.target.optical_rcs_m2);
    Ok(())
}

/// Rejects standoffs inside the far-field bound before a sweep starts, so
/// the failure is one clear diagnostic instead of a file of NaN rows.
fn far_field_gate(run: &RunConfig) -> Result<(), CliError> {
    if run.allow_near_field {
        return Ok(());
    }
    let min_range = far_field_min_range_m(&run.params)?;
    for &standoff in &run.standoffs_m {
        if standoff < min_range {
            return Err(CliError::Numeric(format!(
                "standoff {standoff} m is inside the far-field bound {min_range:.3} m; \
                 set allow_near_field to override"
            )));
        }
    }
    Ok(())
}

fn evaluate(run: &RunConfig) -> Result<SweepOutput, CliError> {
    far_field_gate(run)?;
    Ok(run_sweep(
        &run.scene,
        &run.params,
        &run.target,
        &run.pattern,
        &run.standoffs_m,
        run.allow_near_field,
    )?)
}

fn create_file(path: &Path) -> Result<BufWriter<fs::File>, CliError> {
    let file = fs::File::create(path)
        .map_err(|e| CliError::Io(format!("io error: {}: {e}", path.display())))?;
    Ok(BufWriter::new(file))
}

fn finish_file(path: &Path, mut writer: BufWriter<fs::File>) -> Result<(), CliError> {
    writer
        .flush()
        .map_err(|e| CliError::Io(format!("io error: {}: {e}", path.display())))
}

fn io_context(path: &Path) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("io error: {}: {e}", path.display()))
}

fn ensure_out_dir(out_dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("io error: {}: {e}", out_dir.display())))
}

fn print_summary(output: &SweepOutput) -> Result<(), CliError> {
    let mut buf = Vec::new();
    write_summary_csv(&mut buf, &output.summaries)
        .map_err(|e| CliError::Io(format!("io error: stdout: {e}")))?;
    print!("{}", String::from_utf8_lossy(&buf));
    Ok(())
}

fn cmd_sweep(run: &RunConfig, out_dir: &Path) -> Result<(), CliError> {
    let output = evaluate(run)?;
    ensure_out_dir(out_dir)?;

    let rows_path = out_dir.join("sweep.csv");
    let mut writer = create_file(&rows_path)?;
    write_rows_csv(&mut writer, &output.rows).map_err(io_context(&rows_path))?;
    finish_file(&rows_path, writer)?;

    let summary_path = out_dir.join("sweep_summary.csv");
    let mut writer = create_file(&summary_path)?;
    write_summary_csv(&mut writer, &output.summaries).map_err(io_context(&summary_path))?;
    finish_file(&summary_path, writer)?;

    print_summary(&output)
}

/// Writes one three-column projection (standoff, theta, one quantity) of the
/// sweep rows.
fn write_projection<W: Write>(
    writer: &mut W,
    rows: &[SweepRow],
    quantity: &str,
    pick: impl Fn(&SweepRow) -> f64,
) -> io::Result<()> {
    writeln!(writer, "standoff_m,theta_deg,{quantity}")?;
    for row in rows {
        writeln!(
            writer,
            "{},{},{}",
            format_value(row.standoff_m),
            format_value(row.theta_deg),
            format_value(pick(row))
        )?;
    }
    Ok(())
}

type RowQuantity = fn(&SweepRow) -> f64;

fn cmd_fig2(run: &RunConfig, out_dir: &Path) -> Result<(), CliError> {
    let output = evaluate(run)?;
    ensure_out_dir(out_dir)?;

    let panels: [(&str, &str, RowQuantity); 4] = [
        ("fig2a.csv", "beta_deg", |r| r.beta_deg),
        ("fig2b.csv", "sigma_eff_m2", |r| r.sigma_eff_m2),
        ("fig2c.csv", "z_dbz", |r| r.z_dbz),
        ("fig2d.csv", "delta_z_db", |r| r.delta_z_db),
    ];
    for (name, quantity, pick) in panels {
        let path = out_dir.join(name);
        let mut writer = create_file(&path)?;
        write_projection(&mut writer, &output.rows, quantity, pick).map_err(io_context(&path))?;
        finish_file(&path, writer)?;
    }

    let summary_path = out_dir.join("fig2_summary.csv");
    let mut writer = create_file(&summary_path)?;
    write_summary_csv(&mut writer, &output.summaries).map_err(io_context(&summary_path))?;
    finish_file(&summary_path, writer)?;

    print_summary(&output)
}

fn cmd_check(run: &RunConfig) -> Result<(), CliError> {
    let x = size_parameter(run.target.radius_m, run.params.wavelength_m)?;
    let regime = regime_check(x, &RegimeThresholds::default())?;
    let min_range = far_field_min_range_m(&run.params)?;
    print_kv("size_parameter", x);
    println!("regime={}", regime.name());
    println!("optical_shortcut_valid={}", regime.optical_rcs_valid());
    print_kv("far_field_min_range_m", min_range);
    println!("allow_near_field={}", run.allow_near_field);
    for &standoff in &run.standoffs_m {
        println!(
            "standoff_m={} far_field_ok={} margin_m={}",
            format_value(standoff),
            standoff >= min_range,
            format_value(standoff - min_range)
        );
    }
    Ok(())
}
