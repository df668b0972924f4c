//! McCumber reciprocity between emission and absorption cross sections.
//!
//! Each doublet is treated as a ladder of `d` equally spaced levels of unit
//! degeneracy, `Z = Σ_{k<d} exp(-k ΔE / k_B T)`. Written in closed form this is
//! `(1 - e^{-d ΔE/k_B T}) / (1 - e^{-ΔE/k_B T})`, which is the form used below.
//! A reading of the level sum with per-level degeneracy factors `d_k` would give
//! a different ratio; the ladder reading is the one consistent with the closed form.

use crate::constants::{BOLTZMANN, ELEMENTARY_CHARGE, HC};
use crate::error::{Error, Result};

use super::{Spectrum, SpectrumKind};

/// Level splittings of the lower and upper doublets plus the zero-phonon line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubletStructure {
    /// Lower (ground) doublet splitting, eV.
    pub delta_e_lower: f64,
    /// Upper (excited) doublet splitting, eV.
    pub delta_e_upper: f64,
    pub d_lower: u32,
    pub d_upper: u32,
    /// Zero-phonon line wavelength, m.
    pub lambda_zl: f64,
}

impl DoubletStructure {
    pub fn new(delta_e_lower: f64, delta_e_upper: f64, d_lower: u32, d_upper: u32, lambda_zl: f64) -> Result<Self> {
        let levels = DoubletStructure {
            delta_e_lower,
            delta_e_upper,
            d_lower,
            d_upper,
            lambda_zl,
        };
        levels.validate()?;
        Ok(levels)
    }

    /// SiV⁻: ΔE_l = 0.2 meV, ΔE_u = 1.05 meV, both doublets two-fold, ZPL at 738 nm.
    pub fn siv() -> Self {
        DoubletStructure {
            delta_e_lower: 0.2e-3,
            delta_e_upper: 1.05e-3,
            d_lower: 2,
            d_upper: 2,
            lambda_zl: 738e-9,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta_e_lower > 0.0 && self.delta_e_upper > 0.0) {
            return Err(Error::InvalidArgument("doublet splittings must be positive".into()));
        }
        if self.d_lower == 0 || self.d_upper == 0 {
            return Err(Error::InvalidArgument("doublet level counts must be at least 1".into()));
        }
        if !(self.lambda_zl > 0.0 && self.lambda_zl.is_finite()) {
            return Err(Error::InvalidArgument("zero-phonon wavelength must be positive".into()));
        }
        Ok(())
    }

    /// Zero-phonon transition energy hc/λ_ZL, J.
    pub fn zero_line_energy(&self) -> f64 {
        HC / self.lambda_zl
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "temperature must be positive, got {t} K"
        )))
    }
}

/// Ladder partition function in closed form; `x = ΔE / k_B T`.
fn ladder_partition(x: f64, d: u32) -> f64 {
    // (1 - e^{-d x}) / (1 - e^{-x}), via expm1 so small x keeps full precision
    (-(d as f64) * x).exp_m1() / (-x).exp_m1()
}

/// Z_l / Z_u for the two doublets at temperature `t` (K).
pub fn partition_ratio(t: f64, levels: &DoubletStructure) -> Result<f64> {
    check_temperature(t)?;
    let kt = BOLTZMANN * t / ELEMENTARY_CHARGE;
    let z_lower = ladder_partition(levels.delta_e_lower / kt, levels.d_lower);
    let z_upper = ladder_partition(levels.delta_e_upper / kt, levels.d_upper);
    Ok(z_lower / z_upper)
}

/// σ_se/σ_abs = Z_ratio · exp[(hc/λ_ZL − hc/λ) / k_B T].
pub fn mccumber_ratio(lambda: f64, t: f64, levels: &DoubletStructure) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "wavelength must be positive, got {lambda:e} m"
        )));
    }
    let z = partition_ratio(t, levels)?;
    if lambda == levels.lambda_zl {
        return Ok(z);
    }
    let exponent = (levels.zero_line_energy() - HC / lambda) / (BOLTZMANN * t);
    Ok(z * exponent.exp())
}

/// Absorption cross section from an emission cross section via McCumber, on the same grid.
pub fn absorption_from_emission(sigma_se: &Spectrum, t: f64, levels: &DoubletStructure) -> Result<Spectrum> {
    if sigma_se.kind() != SpectrumKind::CrossSection {
        return Err(Error::InvalidArgument(
            "McCumber conversion expects a cross-section spectrum".into(),
        ));
    }
    check_temperature(t)?;
    let ratios = sigma_se
        .wavelengths()
        .iter()
        .map(|&w| mccumber_ratio(w, t, levels))
        .collect::<Result<Vec<_>>>()?;
    let values = sigma_se.values().iter().zip(&ratios).map(|(v, r)| v / r).collect();
    Spectrum::new(sigma_se.wavelengths().to_vec(), values, SpectrumKind::CrossSection)
}
