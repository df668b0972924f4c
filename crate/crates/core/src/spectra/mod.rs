//! Wavelength-indexed spectra and the cross-section transforms built on them.
//!
//! All wavelengths are stored in meters. Derived spectra always share the grid
//! of their input; nothing here resamples or extrapolates.

mod bundled;
mod calibration;
mod io;
mod mccumber;
mod nv_absorption;

pub use bundled::{bundled_names, bundled_spectrum, reconstruct};
pub use calibration::{calibrate_absorption, CalibrationAnchor};
pub use io::{parse_spectrum, read_spectrum, render_spectrum, write_spectrum};
pub use mccumber::{absorption_from_emission, mccumber_ratio, partition_ratio, DoubletStructure};
pub use nv_absorption::{nv_absorption_model, NvAbsorptionModel, NV_SPLICE_WAVELENGTH};

use std::f64::consts::PI;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};

/// What the values of a [`Spectrum`] measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    /// Absolute cross section in m².
    CrossSection,
    /// Relative intensity, arbitrary units.
    Intensity,
}

impl SpectrumKind {
    pub fn tag(self) -> &'static str {
        match self {
            SpectrumKind::CrossSection => "cross_section_m2",
            SpectrumKind::Intensity => "intensity_arb",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "cross_section_m2" => Some(SpectrumKind::CrossSection),
            "intensity_arb" => Some(SpectrumKind::Intensity),
            _ => None,
        }
    }
}

/// Sampled spectrum on a strictly increasing wavelength grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    wavelengths: Vec<f64>,
    values: Vec<f64>,
    kind: SpectrumKind,
}

impl Spectrum {
    /// Builds a spectrum, checking every invariant of the grid and the values.
    pub fn new(wavelengths: Vec<f64>, values: Vec<f64>, kind: SpectrumKind) -> Result<Self> {
        if wavelengths.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} wavelengths but {} values",
                wavelengths.len(),
                values.len()
            )));
        }
        if wavelengths.len() < 2 {
            return Err(Error::InvalidArgument("a spectrum needs at least two samples".into()));
        }
        for (i, &w) in wavelengths.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "wavelength #{i} ({w:e} m) must be finite and positive"
                )));
            }
            if i > 0 && w <= wavelengths[i - 1] {
                return Err(Error::InvalidArgument(format!(
                    "wavelengths must be strictly increasing (#{i}: {w:e} m after {:e} m)",
                    wavelengths[i - 1]
                )));
            }
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "value #{i} ({v:e}) must be finite and non-negative"
            )));
        }
        Ok(Spectrum {
            wavelengths,
            values,
            kind,
        })
    }

    /// Samples `f` on `grid`.
    pub fn from_fn(grid: Vec<f64>, kind: SpectrumKind, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.iter().map(|&w| f(w)).collect();
        Spectrum::new(grid, values, kind)
    }

    pub fn wavelengths(&self) -> &[f64] {
        &self.wavelengths
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Closed wavelength interval covered by the grid.
    pub fn range(&self) -> (f64, f64) {
        (self.wavelengths[0], self.wavelengths[self.wavelengths.len() - 1])
    }

    pub fn contains(&self, lambda: f64) -> bool {
        let (lo, hi) = self.range();
        lambda >= lo && lambda <= hi
    }

    /// Wavelength of the largest sample (first one on ties).
    pub fn peak_wavelength(&self) -> f64 {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        self.wavelengths[best]
    }

    /// Same grid, values replaced pointwise.
    pub fn map_values(&self, kind: SpectrumKind, f: impl Fn(f64, f64) -> f64) -> Result<Spectrum> {
        let values = self
            .wavelengths
            .iter()
            .zip(&self.values)
            .map(|(&w, &v)| f(w, v))
            .collect();
        Spectrum::new(self.wavelengths.clone(), values, kind)
    }

    /// Piecewise-linear value at `lambda`. Exact on grid points, an error outside the grid.
    pub fn interpolate(&self, lambda: f64) -> Result<f64> {
        interpolate(self, lambda)
    }

    /// Trapezoid integral of `weight(λ)·value(λ)` over the native grid.
    pub fn integrate_weighted(&self, weight: impl Fn(f64) -> f64) -> f64 {
        self.wavelengths
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(w, v)| 0.5 * (w[1] - w[0]) * (weight(w[0]) * v[0] + weight(w[1]) * v[1]))
            .sum()
    }

    /// Trapezoid integral of the values.
    pub fn integral(&self) -> f64 {
        self.integrate_weighted(|_| 1.0)
    }
}

/// Piecewise-linear interpolation of `s` at `lambda`.
pub fn interpolate(s: &Spectrum, lambda: f64) -> Result<f64> {
    let (lo, hi) = s.range();
    if !(lambda >= lo && lambda <= hi) {
        return Err(Error::OutOfRange {
            what: "wavelength (m)",
            value: lambda,
            min: lo,
            max: hi,
        });
    }
    let w = &s.wavelengths;
    // index of the first grid point strictly greater than lambda
    let upper = w.partition_point(|&x| x <= lambda);
    if upper == 0 {
        return Ok(s.values[0]);
    }
    let i = upper - 1;
    if w[i] == lambda || i + 1 == w.len() {
        return Ok(s.values[i]);
    }
    let t = (lambda - w[i]) / (w[i + 1] - w[i]);
    Ok(s.values[i] + t * (s.values[i + 1] - s.values[i]))
}

/// Intensity-weighted mean wavelength ∫λ·s dλ / ∫s dλ (trapezoid rule).
pub fn mean_fluorescence_wavelength(sigma_se: &Spectrum) -> Result<f64> {
    let norm = sigma_se.integral();
    if !(norm > 0.0) {
        return Err(Error::Degenerate(
            "spectrum has no positive weight; mean wavelength undefined".into(),
        ));
    }
    let mean = sigma_se.integrate_weighted(|w| w) / norm;
    let (lo, hi) = sigma_se.range();
    Ok(mean.clamp(lo, hi))
}

/// Absolute stimulated-emission cross section from a relative photoluminescence
/// spectrum (Füchtbauer–Ladenburg):
/// σ_se(λ) = λ⁵ I(λ) / (8π n² c τ_rad λ_F Σ), with Σ = ∫I dλ and λ_F the
/// intensity-weighted mean of the same spectrum.
pub fn fl_emission_cross_section(pl_intensity: &Spectrum, tau_rad: f64, n_refractive: f64) -> Result<Spectrum> {
    if pl_intensity.kind() != SpectrumKind::Intensity {
        return Err(Error::InvalidArgument(
            "Füchtbauer–Ladenburg conversion expects an intensity spectrum".into(),
        ));
    }
    if !(tau_rad > 0.0 && tau_rad.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "radiative lifetime must be positive, got {tau_rad:e} s"
        )));
    }
    if !(n_refractive >= 1.0 && n_refractive.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "refractive index must be >= 1, got {n_refractive}"
        )));
    }
    let sigma = pl_intensity.integral();
    let lambda_f = mean_fluorescence_wavelength(pl_intensity)?;
    let denom = 8.0 * PI * n_refractive * n_refractive * SPEED_OF_LIGHT * tau_rad * lambda_f * sigma;
    pl_intensity.map_values(SpectrumKind::CrossSection, |w, i| w.powi(5) * i / denom)
}

/// Evenly spaced grid with inclusive endpoints.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}
