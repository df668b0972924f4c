//! Absolute absorption calibration from relative excitation spectra.
//!
//! The relative signal (for NV⁻, zero-phonon emission recorded while scanning the
//! excitation wavelength) is power-normalized point by point and then scaled so
//! that the reference wavelength lands on a known literature cross section.

use crate::error::{Error, Result};

use super::{Spectrum, SpectrumKind};

/// Grid points closer than this to the anchor wavelength count as the anchor sample.
const ANCHOR_MATCH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationAnchor {
    /// Reference excitation wavelength, m.
    pub ref_wavelength: f64,
    /// Known absorption cross section at the reference wavelength, m².
    pub ref_cross_section: f64,
    /// Excitation power used for the reference measurement, W.
    pub ref_power: f64,
    /// Excitation power used for every other wavelength, W.
    pub measurement_power: f64,
}

impl CalibrationAnchor {
    /// NV⁻ at 532 nm, 0.95×10⁻¹⁶ cm², with all points taken at 200 µW.
    pub fn nv_532nm() -> Self {
        CalibrationAnchor {
            ref_wavelength: 532e-9,
            ref_cross_section: 0.95e-20,
            ref_power: 200e-6,
            measurement_power: 200e-6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("ref_wavelength", self.ref_wavelength),
            ("ref_cross_section", self.ref_cross_section),
            ("ref_power", self.ref_power),
            ("measurement_power", self.measurement_power),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "calibration anchor {name} must be positive, got {v:e}"
                )));
            }
        }
        Ok(())
    }
}

/// Scales a relative excitation spectrum to absolute absorption cross sections.
pub fn calibrate_absorption(relative_signal: &Spectrum, anchor: &CalibrationAnchor) -> Result<Spectrum> {
    anchor.validate()?;
    let (lo, hi) = relative_signal.range();
    if !(anchor.ref_wavelength >= lo && anchor.ref_wavelength <= hi) {
        return Err(Error::OutOfRange {
            what: "calibration anchor wavelength (m)",
            value: anchor.ref_wavelength,
            min: lo,
            max: hi,
        });
    }

    let anchor_index = relative_signal
        .wavelengths()
        .iter()
        .position(|&w| (w - anchor.ref_wavelength).abs() <= ANCHOR_MATCH_TOLERANCE * anchor.ref_wavelength);
    let power_at = |i: usize| {
        if Some(i) == anchor_index {
            anchor.ref_power
        } else {
            anchor.measurement_power
        }
    };
    let per_watt: Vec<f64> = relative_signal
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| v / power_at(i))
        .collect();

    let anchor_signal = match anchor_index {
        Some(i) => per_watt[i],
        // anchor between samples: both neighbours were taken at the measurement power
        None => relative_signal.interpolate(anchor.ref_wavelength)? / anchor.measurement_power,
    };
    if !(anchor_signal > 0.0) {
        return Err(Error::Calibration(format!(
            "relative signal at the anchor wavelength {:.3} nm is zero",
            anchor.ref_wavelength * 1e9
        )));
    }

    let scale = anchor.ref_cross_section / anchor_signal;
    let values = per_watt
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if Some(i) == anchor_index {
                anchor.ref_cross_section
            } else {
                v * scale
            }
        })
        .collect();
    Spectrum::new(
        relative_signal.wavelengths().to_vec(),
        values,
        SpectrumKind::CrossSection,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relative(values: &[(f64, f64)]) -> Spectrum {
        Spectrum::new(
            values.iter().map(|p| p.0 / 1e9).collect(),
            values.iter().map(|p| p.1).collect(),
            SpectrumKind::Intensity,
        )
        .unwrap()
    }

    #[test]
    fn anchor_maps_to_literature_value() {
        let rel = relative(&[(532.0, 1.0), (700.0, 0.5)]);
        let out = calibrate_absorption(&rel, &CalibrationAnchor::nv_532nm()).unwrap();
        assert_eq!(out.values()[0], 0.95e-20);
        assert!((out.values()[1] - 0.475e-20).abs() < 1e-32);
        assert_eq!(out.kind(), SpectrumKind::CrossSection);
    }

    #[test]
    fn global_scale_does_not_matter() {
        let rel = relative(&[(520.0, 0.8), (532.0, 1.0), (700.0, 0.5), (720.0, 0.01)]);
        let scaled = rel.map_values(SpectrumKind::Intensity, |_, v| 37.5 * v).unwrap();
        let a = calibrate_absorption(&rel, &CalibrationAnchor::nv_532nm()).unwrap();
        let b = calibrate_absorption(&scaled, &CalibrationAnchor::nv_532nm()).unwrap();
        assert_eq!(a.values()[1], 0.95e-20);
        assert_eq!(b.values()[1], 0.95e-20);
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-14 * x.abs());
        }
    }

    #[test]
    fn reduced_reference_power_is_compensated() {
        // reference taken at a quarter of the scan power: same raw signal means
        // four times less absorption per watt at the other wavelength
        let rel = relative(&[(532.0, 1.0), (700.0, 1.0)]);
        let anchor = CalibrationAnchor {
            ref_power: 50e-6,
            ..CalibrationAnchor::nv_532nm()
        };
        let out = calibrate_absorption(&rel, &anchor).unwrap();
        assert!((out.values()[1] - 0.95e-20 / 4.0).abs() < 1e-33);
    }

    #[test]
    fn anchor_between_samples_is_interpolated() {
        let rel = relative(&[(530.0, 1.0), (534.0, 3.0), (700.0, 1.0)]);
        let out = calibrate_absorption(&rel, &CalibrationAnchor::nv_532nm()).unwrap();
        assert!((out.values()[2] - 0.95e-20 / 2.0).abs() < 1e-33);
    }

    #[test]
    fn zero_anchor_signal_is_a_calibration_error() {
        let rel = relative(&[(532.0, 0.0), (700.0, 0.5)]);
        assert!(matches!(
            calibrate_absorption(&rel, &CalibrationAnchor::nv_532nm()),
            Err(Error::Calibration(_))
        ));
        let outside = relative(&[(600.0, 1.0), (700.0, 0.5)]);
        assert!(matches!(
            calibrate_absorption(&outside, &CalibrationAnchor::nv_532nm()),
            Err(Error::OutOfRange { .. })
        ));
    }
}
