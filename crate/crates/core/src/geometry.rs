//! Scene geometry: positions of the radar, the hovering platform, and the
//! suspended sphere, plus the off-boresight angle and slant range as
//! functions of the swing angle.
//!
//! Frame convention: the radar sits at the origin; `x` is the horizontal
//! ground-range axis toward the target, `z` points up, and `y` completes the
//! right-handed frame. The sphere swings in the y-z plane, so the swing
//! displaces it along `±y` (plus the small vertical rise of a pendulum bob).

use crate::error::{Error, Result};

/// Scene layout: standoff distance, radar elevation, tether, and swing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneConfig {
    /// Straight-line distance from the radar to the sphere's rest position, meters.
    pub standoff_distance_m: f64,
    /// Radar elevation angle toward the rest position, degrees.
    pub elevation_deg: f64,
    /// Suspension line length from the platform down to the sphere, meters.
    pub tether_length_m: f64,
    /// Swing-angle grid lower bound, degrees.
    pub theta_min_deg: f64,
    /// Swing-angle grid upper bound, degrees.
    pub theta_max_deg: f64,
    /// Number of grid points, endpoints inclusive.
    pub theta_steps: usize,
}

impl Default for SceneConfig {
    fn default() -> Self {
        Self {
            standoff_distance_m: 2000.0,
            elevation_deg: 2.0,
            tether_length_m: 60.0,
            theta_min_deg: -10.0,
            theta_max_deg: 10.0,
            theta_steps: 201,
        }
    }
}

impl SceneConfig {
    /// Checks every field invariant, naming the offending key on failure.
    pub fn validate(&self) -> Result<()> {
        if !self.tether_length_m.is_finite() || self.tether_length_m <= 0.0 {
            return Err(Error::config(
                "tether_length_m",
                format!("must be positive and finite (got {})", self.tether_length_m),
            ));
        }
        if !self.standoff_distance_m.is_finite() || self.standoff_distance_m <= self.tether_length_m
        {
            return Err(Error::config(
                "standoff_distance_m",
                format!(
                    "must exceed the tether length {} m (got {})",
                    self.tether_length_m, self.standoff_distance_m
                ),
            ));
        }
        if !self.elevation_deg.is_finite() || self.elevation_deg < 0.0 || self.elevation_deg >= 90.0
        {
            return Err(Error::config(
                "elevation_deg",
                format!("must lie in [0, 90) degrees (got {})", self.elevation_deg),
            ));
        }
        for (key, value) in [
            ("theta_min_deg", self.theta_min_deg),
            ("theta_max_deg", self.theta_max_deg),
        ] {
            if !value.is_finite() || value.abs() > 90.0 {
                return Err(Error::config(
                    key,
                    format!("must lie in [-90, 90] degrees (got {value})"),
                ));
            }
        }
        if self.theta_min_deg > self.theta_max_deg {
            return Err(Error::config(
                "theta_min_deg",
                format!(
                    "must not exceed theta_max_deg {} (got {})",
                    self.theta_max_deg, self.theta_min_deg
                ),
            ));
        }
        if self.theta_steps == 0 {
            return Err(Error::config("theta_steps", "must be at least 1"));
        }
        Ok(())
    }

    /// Returns a copy with a different standoff distance.
    pub fn with_standoff(&self, standoff_distance_m: f64) -> Self {
        Self {
            standoff_distance_m,
            ..self.clone()
        }
    }

    /// Inclusive uniform swing-angle grid in degrees.
    ///
    /// Both endpoints are hit exactly; a symmetric grid with an odd number of
    /// points contains 0 exactly. A single-point grid collapses to
    /// `theta_min_deg`.
    pub fn theta_grid_deg(&self) -> Vec<f64> {
        let n = self.theta_steps;
        if n == 1 || self.theta_min_deg == self.theta_max_deg {
            return vec![self.theta_min_deg; n];
        }
        let span = (n - 1) as f64;
        (0..n)
            .map(|i| {
                let t = i as f64 / span;
                self.theta_min_deg * (1.0 - t) + self.theta_max_deg * t
            })
            .collect()
    }
}

/// Scene snapshot at one swing angle.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneState {
    /// Swing angle, degrees.
    pub theta_deg: f64,
    /// Sphere position in the radar frame, meters.
    pub sphere_position_m: [f64; 3],
    /// Radar-to-sphere distance, meters.
    pub slant_range_m: f64,
    /// Angle between the boresight and the line of sight to the sphere, degrees.
    pub off_axis_deg: f64,
}

/// The sphere's rest position, which is also the antenna boresight point:
/// `L * (cos e, 0, sin e)`.
pub fn rest_position(cfg: &SceneConfig) -> Result<[f64; 3]> {
    cfg.validate()?;
    let e = cfg.elevation_deg.to_radians();
    let l = cfg.standoff_distance_m;
    Ok([l * e.cos(), 0.0, l * e.sin()])
}

/// The hovering platform: one tether length straight above the rest point.
pub fn platform_position(cfg: &SceneConfig) -> Result<[f64; 3]> {
    let rest = rest_position(cfg)?;
    Ok([rest[0], rest[1], rest[2] + cfg.tether_length_m])
}

/// Evaluates the pendulum geometry at one swing angle.
///
/// The sphere hangs from the platform and swings in the y-z plane; its
/// position is the rest point displaced by `l * (0, sin theta, 1 - cos theta)`
/// (equivalently, platform + `l * (0, sin theta, -cos theta)`). Composing
/// from the rest point keeps `off_axis_deg` exactly zero at `theta = 0`.
pub fn scene_state(cfg: &SceneConfig, theta_deg: f64) -> Result<SceneState> {
    let rest = rest_position(cfg)?;
    if !theta_deg.is_finite() || theta_deg.abs() > 90.0 {
        return Err(Error::domain(format!(
            "swing angle must satisfy |theta| <= 90 deg (got {theta_deg})"
        )));
    }
    let theta = theta_deg.to_radians();
    let l = cfg.tether_length_m;
    let sphere = [
        rest[0],
        rest[1] + l * theta.sin(),
        rest[2] + l * (1.0 - theta.cos()),
    ];
    let slant_range_m = norm(sphere);
    if !positive_length(slant_range_m) || !positive_length(norm(rest)) {
        return Err(Error::DegenerateGeometry {
            message: "direction vector has zero length".to_string(),
        });
    }
    Ok(SceneState {
        theta_deg,
        sphere_position_m: sphere,
        slant_range_m,
        off_axis_deg: angle_between_deg(rest, sphere),
    })
}

fn positive_length(value: f64) -> bool {
    value.is_finite() && value > 0.0
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Angle between two nonzero vectors, degrees. The atan2 form stays accurate
/// for tiny angles, where acos of a dot product would lose precision.
fn angle_between_deg(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b)).to_degrees()
}
