//! Swing-angle sweeps across standoff distances, with per-row evaluation,
//! per-standoff summaries, and CSV serialization.
//!
//! Rows that fail a physical gate (out of the main lobe, inside the
//! near-field bound, degenerate geometry) are kept as NaN sentinels so the
//! output grid stays rectangular; summaries count them separately.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::antenna::AntennaPattern;
use crate::error::{Error, Result};
use crate::geometry::{scene_state, SceneConfig};
use crate::rcs::{equivalent_rcs, SphereTarget};
use crate::reflectivity::{sphere_reflectivity_dbz, RadarParams};

/// Header of the per-row CSV emitted by [`write_rows_csv`].
pub const ROWS_HEADER: &str =
    "standoff_m,theta_deg,beta_deg,slant_range_m,sigma_eff_m2,z_dbz,delta_z_db";

/// Header of the per-standoff summary CSV emitted by [`write_summary_csv`].
pub const SUMMARY_HEADER: &str = "standoff_m,beta_max_deg,delta_z_max_db,argmax_theta_deg";

/// One evaluated grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    /// Standoff distance of this row's scene, meters.
    pub standoff_m: f64,
    /// Swing angle, degrees.
    pub theta_deg: f64,
    /// Off-axis angle of the sphere, degrees.
    pub beta_deg: f64,
    /// Radar-to-sphere slant range, meters.
    pub slant_range_m: f64,
    /// Equivalent (pattern-weighted) cross section, square meters.
    pub sigma_eff_m2: f64,
    /// Apparent reflectivity, dBZ.
    pub z_dbz: f64,
    /// Bias relative to boresight, dB.
    pub delta_z_db: f64,
}

/// Per-standoff extrema of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    /// Standoff distance, meters.
    pub standoff_m: f64,
    /// Largest finite off-axis angle over the swing grid, degrees.
    pub beta_max_deg: f64,
    /// Largest finite bias over the swing grid, dB.
    pub delta_z_max_db: f64,
    /// Swing angle at which `delta_z_max_db` occurs; ties keep the earliest
    /// grid point.
    pub argmax_theta_deg: f64,
    /// Number of grid points that produced NaN sentinels.
    pub error_rows: usize,
}

/// All rows and summaries of one sweep, rows ordered by standoff then theta.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub summaries: Vec<SweepSummary>,
}

fn evaluate_row(
    scene: &SceneConfig,
    params: &RadarParams,
    target: &SphereTarget,
    pattern: &AntennaPattern,
    boresight_range_m: f64,
    allow_near_field: bool,
    theta_deg: f64,
) -> SweepRow {
    let state = match scene_state(scene, theta_deg) {
        Ok(state) => state,
        Err(_) => {
            return SweepRow {
                standoff_m: scene.standoff_distance_m,
                theta_deg,
                beta_deg: f64::NAN,
                slant_range_m: f64::NAN,
                sigma_eff_m2: f64::NAN,
                z_dbz: f64::NAN,
                delta_z_db: f64::NAN,
            }
        }
    };
    let sigma_eff = equivalent_rcs(target, state.off_axis_deg, pattern).unwrap_or(f64::NAN);
    let (z_dbz, delta_z_db) = match sphere_reflectivity_dbz(
        params,
        target,
        &state,
        pattern,
        boresight_range_m,
        allow_near_field,
    ) {
        Ok(result) => (result.z_dbz, result.delta_z_db),
        Err(_) => (f64::NAN, f64::NAN),
    };
    SweepRow {
        standoff_m: scene.standoff_distance_m,
        theta_deg,
        beta_deg: state.off_axis_deg,
        slant_range_m: state.slant_range_m,
        sigma_eff_m2: sigma_eff,
        z_dbz,
        delta_z_db,
    }
}

fn summarize(standoff_m: f64, rows: &[SweepRow]) -> SweepSummary {
    let mut beta_max = f64::NAN;
    let mut delta_max = f64::NAN;
    let mut argmax_theta = f64::NAN;
    let mut error_rows = 0;
    for row in rows {
        if row.delta_z_db.is_nan() || row.beta_deg.is_nan() {
            error_rows += 1;
        }
        // Strict > keeps the earliest grid point on ties; the NaN check seeds
        // the running maximum from its NaN start.
        if row.beta_deg.is_finite() && (beta_max.is_nan() || row.beta_deg > beta_max) {
            beta_max = row.beta_deg;
        }
        if row.delta_z_db.is_finite() && (delta_max.is_nan() || row.delta_z_db > delta_max) {
            delta_max = row.delta_z_db;
            argmax_theta = row.theta_deg;
        }
    }
    SweepSummary {
        standoff_m,
        beta_max_deg: beta_max,
        delta_z_max_db: delta_max,
        argmax_theta_deg: argmax_theta,
        error_rows,
    }
}

/// Evaluates the swing grid of `cfg` at every standoff in `standoffs_m`.
///
/// Rows appear in standoff order, each block in grid (theta) order; the
/// result is deterministic regardless of how many threads evaluate it. Each
/// standoff's bias reference is its own boresight (theta = 0) slant range, so
/// the theta = 0 grid point, when present, carries a bias of exactly zero.
pub fn run_sweep(
    cfg: &SceneConfig,
    params: &RadarParams,
    target: &SphereTarget,
    pattern: &AntennaPattern,
    standoffs_m: &[f64],
    allow_near_field: bool,
) -> Result<SweepOutput> {
    cfg.validate()?;
    params.validate()?;
    target.validate()?;
    pattern.validate()?;
    if standoffs_m.is_empty() {
        return Err(Error::config("standoff_m", "list must not be empty"));
    }
    for &standoff in standoffs_m {
        if !standoff.is_finite() || standoff <= cfg.tether_length_m {
            return Err(Error::config(
                "standoff_m",
                format!(
                    "each standoff must be finite and exceed the tether length \
                     {} m (got {standoff})",
                    cfg.tether_length_m
                ),
            ));
        }
    }

    let mut rows = Vec::with_capacity(standoffs_m.len() * cfg.theta_steps);
    let mut summaries = Vec::with_capacity(standoffs_m.len());
    for &standoff in standoffs_m {
        let scene = cfg.with_standoff(standoff);
        let boresight_range_m = scene_state(&scene, 0.0)?.slant_range_m;
        let thetas = scene.theta_grid_deg();
        let batch: Vec<SweepRow> = thetas
            .par_iter()
            .map(|&theta_deg| {
                evaluate_row(
                    &scene,
                    params,
                    target,
                    pattern,
                    boresight_range_m,
                    allow_near_field,
                    theta_deg,
                )
            })
            .collect();
        summaries.push(summarize(standoff, &batch));
        rows.extend(batch);
    }
    Ok(SweepOutput { rows, summaries })
}

/// Formats a value with nine significant digits in plain decimal notation
/// (no exponents), so files diff cleanly across runs and platforms.
pub fn format_value(value: f64) -> String {
    if value.is_nan() {
        return "NaN".to_string();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if value == 0.0 {
        return "0.0".to_string();
    }
    let exponent = value.abs().log10().floor() as i32;
    let decimals = (8 - exponent).clamp(0, 32) as usize;
    format!("{value:.decimals$}")
}

fn write_fields<W: Write>(writer: &mut W, fields: &[f64]) -> io::Result<()> {
    let line: Vec<String> = fields.iter().map(|&v| format_value(v)).collect();
    writeln!(writer, "{}", line.join(","))
}

/// Writes the per-row CSV, header first.
pub fn write_rows_csv<W: Write>(writer: &mut W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(writer, "{ROWS_HEADER}")?;
    for row in rows {
        write_fields(
            writer,
            &[
                row.standoff_m,
                row.theta_deg,
                row.beta_deg,
                row.slant_range_m,
                row.sigma_eff_m2,
                row.z_dbz,
                row.delta_z_db,
            ],
        )?;
    }
    Ok(())
}

/// Writes the per-standoff summary CSV, header first.
pub fn write_summary_csv<W: Write>(writer: &mut W, summaries: &[SweepSummary]) -> io::Result<()> {
    writeln!(writer, "{SUMMARY_HEADER}")?;
    for summary in summaries {
        write_fields(
            writer,
            &[
                summary.standoff_m,
                summary.beta_max_deg,
                summary.delta_z_max_db,
                summary.argmax_theta_deg,
            ],
        )?;
    }
    Ok(())
}
