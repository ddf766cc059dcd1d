//! Simulation of the reflectivity bias a wind-blown calibration sphere
//! imprints on a weather radar.
//!
//! An external calibration target — a metal sphere hung on a tether beneath a
//! hovering platform — only works as a reference while it stays on the radar
//! beam axis. Wind swings the tether like a pendulum, the sphere leaves the
//! axis, and the two-way antenna pattern attenuates its echo, so the radar
//! reports a reflectivity lower than the sphere's true one. This crate
//! quantifies that bias as a deterministic chain of small models:
//!
//! 1. **Geometry** ([`geometry`]): the radar sits at the origin, the platform
//!    hovers at a standoff distance and elevation, and the sphere hangs on a
//!    rigid tether swinging by an angle theta in the cross-range plane. From
//!    the swung position follow the slant range and the off-axis angle beta.
//! 2. **Antenna** ([`antenna`]): a normalized-sinc main lobe turns beta into
//!    a two-way pattern weight, or flags the sphere as outside the lobe.
//! 3. **Cross section** ([`rcs`]): the sphere's radar cross section comes
//!    from the exact series solution for a conducting sphere (with spherical
//!    Bessel functions in [`bessel`]); in the optical regime it collapses to
//!    the geometric value `pi r^2`, which the pattern weight then scales into
//!    an equivalent cross section.
//! 4. **Reflectivity** ([`reflectivity`]): a dB chain turns range,
//!    attenuation, and pattern loss into apparent reflectivity, and the
//!    difference against the boresight reference is the calibration bias.
//! 5. **Sweeps** ([`sweep`]): the chain evaluated over a swing-angle grid at
//!    several standoff distances, with CSV output and per-standoff extrema.
//!
//! Every function is pure and every sweep is deterministic: rows are computed
//! in parallel but assembled in grid order, so repeated runs produce
//! byte-identical files.

pub mod antenna;
pub mod bessel;
pub mod error;
pub mod geometry;
pub mod rcs;
pub mod reflectivity;
pub mod sweep;

pub use antenna::{normalized_sinc, pattern_factor, pattern_loss_db, AntennaPattern};
pub use bessel::{spherical_jn, spherical_yn};
pub use error::{Error, Result};
pub use geometry::{platform_position, rest_position, scene_state, SceneConfig, SceneState};
pub use rcs::{
    equivalent_rcs, mie_backscatter_rcs, mie_backscatter_rcs_with_terms, regime_check,
    series_terms, size_parameter, Regime, RegimeThresholds, SphereTarget, DEFAULT_SPHERE_RADIUS_M,
    MAX_SIZE_PARAMETER,
};
pub use reflectivity::{
    compare_reflectivity, dbz_to_linear, far_field_min_range_m, linear_to_dbz, received_power_db,
    received_power_linear, sphere_reflectivity_dbz, RadarParams, ReflectivityResult,
};
pub use sweep::{
    format_value, run_sweep, write_rows_csv, write_summary_csv, SweepOutput, SweepRow,
    SweepSummary, ROWS_HEADER, SUMMARY_HEADER,
};
