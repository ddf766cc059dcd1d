//! Sphere radar cross section: the optical-limit shortcut, scattering-regime
//! classification by size parameter, the exact backscatter series for a
//! perfectly conducting sphere, and the pattern-weighted equivalent cross
//! section seen off boresight.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::antenna::{pattern_factor, AntennaPattern};
use crate::bessel::{spherical_jn, spherical_yn};
use crate::error::{Error, Result};

/// Default calibration-sphere radius, meters.
pub const DEFAULT_SPHERE_RADIUS_M: f64 = 0.15;

/// Largest size parameter the backscatter series accepts.
pub const MAX_SIZE_PARAMETER: f64 = 5000.0;

/// Calibration sphere: radius plus the cached optical-limit cross section.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereTarget {
    /// Sphere radius, meters.
    pub radius_m: f64,
    /// Optical-limit cross section pi r^2, m^2, cached at construction.
    pub optical_rcs_m2: f64,
}

impl SphereTarget {
    /// Builds a target from its radius, caching the optical cross section.
    pub fn new(radius_m: f64) -> Result<Self> {
        if !radius_m.is_finite() || radius_m <= 0.0 {
            return Err(Error::config(
                "sphere_radius_m",
                format!("must be positive and finite (got {radius_m})"),
            ));
        }
        Ok(Self {
            radius_m,
            optical_rcs_m2: PI * radius_m * radius_m,
        })
    }

    /// Checks the radius and that the cached cross section is consistent
    /// with the radius to within 1e-12 relative.
    pub fn validate(&self) -> Result<()> {
        if !self.radius_m.is_finite() || self.radius_m <= 0.0 {
            return Err(Error::config(
                "sphere_radius_m",
                format!("must be positive and finite (got {})", self.radius_m),
            ));
        }
        let expected = PI * self.radius_m * self.radius_m;
        if ((self.optical_rcs_m2 - expected) / expected).abs() > 1e-12 {
            return Err(Error::config(
                "sphere_radius_m",
                "cached optical cross section is inconsistent with the radius",
            ));
        }
        Ok(())
    }
}

impl Default for SphereTarget {
    fn default() -> Self {
        Self::new(DEFAULT_SPHERE_RADIUS_M).expect("default radius is valid")
    }
}

/// Size parameter `x = 2 pi r / lambda`.
pub fn size_parameter(radius_m: f64, wavelength_m: f64) -> Result<f64> {
    if !radius_m.is_finite() || radius_m <= 0.0 {
        return Err(Error::domain(format!(
            "radius must be positive and finite (got {radius_m})"
        )));
    }
    if !wavelength_m.is_finite() || wavelength_m <= 0.0 {
        return Err(Error::domain(format!(
            "wavelength must be positive and finite (got {wavelength_m})"
        )));
    }
    Ok(2.0 * PI * radius_m / wavelength_m)
}

/// Scattering-regime classification by size parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `x` below the Rayleigh threshold: backscatter ~ 9 pi r^2 x^4.
    Rayleigh,
    /// Resonance region between the thresholds.
    Mie,
    /// `x` at or above the optical threshold: backscatter ~ pi r^2.
    Optical,
}

impl Regime {
    /// Whether the optical shortcut sigma ~ pi r^2 is trustworthy here.
    pub fn optical_rcs_valid(self) -> bool {
        matches!(self, Regime::Optical)
    }

    /// Lower-case label for text output.
    pub fn name(self) -> &'static str {
        match self {
            Regime::Rayleigh => "rayleigh",
            Regime::Mie => "mie",
            Regime::Optical => "optical",
        }
    }
}

/// Classification thresholds on the size parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeThresholds {
    /// Below this the target scatters in the Rayleigh regime.
    pub rayleigh_max: f64,
    /// At or above this the optical shortcut applies.
    pub optical_min: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            rayleigh_max: 0.5,
            optical_min: 10.0,
        }
    }
}

/// Classifies a size parameter against the given thresholds.
pub fn regime_check(x: f64, thresholds: &RegimeThresholds) -> Result<Regime> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "size parameter must be positive and finite (got {x})"
        )));
    }
    if !thresholds.rayleigh_max.is_finite()
        || !thresholds.optical_min.is_finite()
        || thresholds.rayleigh_max <= 0.0
        || thresholds.optical_min < thresholds.rayleigh_max
    {
        return Err(Error::config(
            "regime_thresholds",
            format!(
                "need 0 < rayleigh_max <= optical_min (got {} / {})",
                thresholds.rayleigh_max, thresholds.optical_min
            ),
        ));
    }
    Ok(if x < thresholds.rayleigh_max {
        Regime::Rayleigh
    } else if x >= thresholds.optical_min {
        Regime::Optical
    } else {
        Regime::Mie
    })
}

/// Number of partial waves kept in the backscatter series: the standard
/// truncation `ceil(x + 4 x^(1/3) + 2)`, which converges the sum to well
/// below every tolerance used in this crate.
pub fn series_terms(x: f64) -> usize {
    (x + 4.0 * x.cbrt() + 2.0).ceil() as usize
}

/// Exact monostatic backscatter cross section of a perfectly conducting
/// sphere, m^2, valid for size parameters in (0, 5000].
///
/// sigma = (lambda^2 / 4 pi) |sum_n (-1)^n (2n+1) (a_n - b_n)|^2 with
/// a_n = j_n(x) / h_n(x) and b_n = [x j_n(x)]' / [x h_n(x)]', where h_n is
/// the spherical Hankel function of the first kind.
pub fn mie_backscatter_rcs(radius_m: f64, wavelength_m: f64) -> Result<f64> {
    let x = size_parameter(radius_m, wavelength_m)?;
    mie_backscatter_rcs_with_terms(radius_m, wavelength_m, series_terms(x))
}

/// Backscatter series truncated after `n_terms` partial waves. Exposed so
/// truncation-stability studies can vary the term count explicitly.
pub fn mie_backscatter_rcs_with_terms(
    radius_m: f64,
    wavelength_m: f64,
    n_terms: usize,
) -> Result<f64> {
    let x = size_parameter(radius_m, wavelength_m)?;
    if x > MAX_SIZE_PARAMETER {
        return Err(Error::domain(format!(
            "size parameter {x:.3} exceeds the supported limit {MAX_SIZE_PARAMETER}"
        )));
    }
    if n_terms == 0 {
        return Err(Error::domain(
            "the backscatter series needs at least one term",
        ));
    }
    if n_terms > 100_000 {
        return Err(Error::domain(format!(
            "series length {n_terms} is unreasonably large"
        )));
    }

    let j = spherical_jn(n_terms, x);
    let y = spherical_yn(n_terms, x);
    // The upward y recurrence can overflow for extreme order/argument
    // combinations; report the first failing order instead of polluting the
    // sum with infinities.
    for (n, value) in y.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFiniteSeries { order: n });
        }
    }

    let mut f = Complex64::new(0.0, 0.0);
    let mut sign = 1.0_f64;
    for n in 1..=n_terms {
        sign = -sign;
        let nf = n as f64;
        let h_n = Complex64::new(j[n], y[n]);
        // Derivative identity: [x f_n(x)]' = x f_{n-1}(x) - n f_n(x).
        let xi_deriv = Complex64::new(x * j[n - 1] - nf * j[n], x * y[n - 1] - nf * y[n]);
        let a = Complex64::new(j[n], 0.0) / h_n;
        let b = Complex64::new(xi_deriv.re, 0.0) / xi_deriv;
        f += (a - b) * (sign * (2.0 * nf + 1.0));
        if !f.re.is_finite() || !f.im.is_finite() {
            return Err(Error::NonFiniteSeries { order: n });
        }
    }
    Ok(wavelength_m * wavelength_m / (4.0 * PI) * f.norm_sqr())
}

/// Equivalent cross section of the sphere seen `beta_deg` off boresight: the
/// optical cross section weighted by a single pattern factor, independent of
/// the pattern exponent.
pub fn equivalent_rcs(
    target: &SphereTarget,
    beta_deg: f64,
    pattern: &AntennaPattern,
) -> Result<f64> {
    target.validate()?;
    let factor = pattern_factor(beta_deg, pattern)?;
    Ok(target.optical_rcs_m2 * factor)
}
