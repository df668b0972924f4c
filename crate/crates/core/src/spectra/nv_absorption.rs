//! NV⁻ absorption cross section over the visible and near infrared.
//!
//! Below the splice wavelength the model interpolates a tabulated band shape
//! (pinned to 0.95×10⁻²⁰ m² at 532 nm). Above it, where the absorption is
//! several orders of magnitude weaker, it evaluates `exp(quartic(λ))` least-squares
//! fitted to measured anchor points. The fit coefficients are approximate by nature.

use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::{bundled_spectrum, Spectrum};

/// Wavelength where the model switches from the table to the quartic-log fit.
pub const NV_SPLICE_WAVELENGTH: f64 = 670e-9;

const DEFAULT_RANGE: (f64, f64) = (500e-9, 1000e-9);

#[derive(Debug, Clone, PartialEq)]
pub struct NvAbsorptionModel {
    table: Spectrum,
    /// Coefficients of ln σ in powers of `t = (λ - center) / half_width`, lowest first.
    coefficients: [f64; 5],
    center: f64,
    half_width: f64,
    splice: f64,
    range: (f64, f64),
}

impl NvAbsorptionModel {
    /// Builds the model from a band table (valid up to `splice`) and anchor points above it.
    pub fn fit(table: Spectrum, anchors: &Spectrum, splice: f64) -> Result<Self> {
        if anchors.len() < 5 {
            return Err(Error::InvalidArgument(format!(
                "quartic fit needs at least 5 anchor points, got {}",
                anchors.len()
            )));
        }
        if !table.contains(splice) {
            return Err(Error::InvalidArgument(
                "absorption table must reach the splice wavelength".into(),
            ));
        }
        if anchors.values().iter().any(|&v| !(v > 0.0)) {
            return Err(Error::InvalidArgument(
                "anchor cross sections must be positive for a log fit".into(),
            ));
        }
        let (lo, hi) = anchors.range();
        let center = 0.5 * (lo + hi);
        let half_width = 0.5 * (hi - lo);
        let ts: Vec<f64> = anchors
            .wavelengths()
            .iter()
            .map(|w| (w - center) / half_width)
            .collect();
        let ys: Vec<f64> = anchors.values().iter().map(|v| v.ln()).collect();
        let coefficients = polyfit4(&ts, &ys)?;
        Ok(NvAbsorptionModel {
            range: (table.range().0, hi),
            table,
            coefficients,
            center,
            half_width,
            splice,
        })
    }

    /// Model built from the bundled table and anchor files, valid over 500–1000 nm.
    pub fn bundled() -> Result<Self> {
        let table = bundled_spectrum("nv-absorption-table")?;
        let anchors = bundled_spectrum("nv-absorption-anchors")?;
        Self::fit(table, &anchors, NV_SPLICE_WAVELENGTH)?.with_range(DEFAULT_RANGE.0, DEFAULT_RANGE.1)
    }

    /// Restricts (or widens) the declared validity range.
    pub fn with_range(mut self, min: f64, max: f64) -> Result<Self> {
        if !(min > 0.0 && max > min) {
            return Err(Error::InvalidArgument(format!(
                "invalid validity range [{min:e}, {max:e}]"
            )));
        }
        if min < self.table.range().0 {
            return Err(Error::InvalidArgument(
                "validity range cannot start below the absorption table".into(),
            ));
        }
        self.range = (min, max);
        Ok(self)
    }

    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    pub fn coefficients(&self) -> [f64; 5] {
        self.coefficients
    }

    /// Absorption cross section (m²) at `lambda` (m).
    pub fn sigma(&self, lambda: f64) -> Result<f64> {
        let (lo, hi) = self.range;
        if !(lambda >= lo && lambda <= hi) {
            return Err(Error::OutOfRange {
                what: "NV absorption model wavelength (m)",
                value: lambda,
                min: lo,
                max: hi,
            });
        }
        if lambda <= self.splice {
            self.table.interpolate(lambda)
        } else {
            Ok(self.fitted(lambda))
        }
    }

    /// Value of the quartic-log branch, also outside its own side of the splice.
    pub fn fitted(&self, lambda: f64) -> f64 {
        let t = (lambda - self.center) / self.half_width;
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c).exp()
    }

    /// Relative jump between the two branches at the splice wavelength.
    pub fn splice_jump(&self) -> Result<f64> {
        let tabulated = self.table.interpolate(self.splice)?;
        Ok((self.fitted(self.splice) - tabulated).abs() / tabulated)
    }

    /// Samples the model on an even grid spanning its validity range.
    pub fn to_spectrum(&self, step: f64) -> Result<Spectrum> {
        let (lo, hi) = self.range;
        let count = ((hi - lo) / step).round() as usize + 1;
        let grid = super::linspace(lo, hi, count);
        let values = grid.iter().map(|&w| self.sigma(w)).collect::<Result<Vec<_>>>()?;
        Spectrum::new(grid, values, super::SpectrumKind::CrossSection)
    }
}

/// σ_abs of NV⁻ from the bundled model.
pub fn nv_absorption_model(lambda: f64) -> Result<f64> {
    static MODEL: OnceLock<std::result::Result<NvAbsorptionModel, Error>> = OnceLock::new();
    MODEL
        .get_or_init(NvAbsorptionModel::bundled)
        .as_ref()
        .map_err(Clone::clone)?
        .sigma(lambda)
}

/// Least-squares quartic through (t, y) via the normal equations.
#[allow(clippy::needless_range_loop)]
fn polyfit4(ts: &[f64], ys: &[f64]) -> Result<[f64; 5]> {
    const N: usize = 5;
    let mut a = [[0.0f64; N + 1]; N];
    for (&t, &y) in ts.iter().zip(ys) {
        let mut powers = [1.0f64; 2 * N - 1];
        for k in 1..powers.len() {
            powers[k] = powers[k - 1] * t;
        }
        for (r, row) in a.iter_mut().enumerate() {
            for c in 0..N {
                row[c] += powers[r + c];
            }
            row[N] += powers[r] * y;
        }
    }
    // Gaussian elimination with partial pivoting
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col].abs() < 1e-300 {
            return Err(Error::Degenerate("singular quartic fit".into()));
        }
        a.swap(col, pivot);
        for row in col + 1..N {
            let f = a[row][col] / a[col][col];
            for k in col..=N {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    let mut x = [0.0f64; N];
    for row in (0..N).rev() {
        let tail: f64 = (row + 1..N).map(|k| a[row][k] * x[k]).sum();
        x[row] = (a[row][N] - tail) / a[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{linspace, SpectrumKind};

    #[test]
    fn polyfit_recovers_exact_quartic() {
        let truth = [0.3, -1.2, 0.5, 0.07, -0.02];
        let ts = linspace(-1.0, 1.0, 17);
        let ys: Vec<f64> = ts
            .iter()
            .map(|t| truth.iter().rev().fold(0.0, |acc, c| acc * t + c))
            .collect();
        let fit = polyfit4(&ts, &ys).unwrap();
        for (a, b) in fit.iter().zip(truth) {
            assert!((a - b).abs() < 1e-10, "{fit:?}");
        }
    }

    #[test]
    fn literature_value_at_532nm() {
        assert_eq!(nv_absorption_model(532e-9).unwrap(), 0.95e-20);
    }

    #[test]
    fn decreasing_above_splice() {
        let model = NvAbsorptionModel::bundled().unwrap();
        let grid = linspace(670.5e-9, 850e-9, 1800);
        for w in grid.windows(2) {
            assert!(model.sigma(w[1]).unwrap() < model.sigma(w[0]).unwrap(), "at {:e}", w[1]);
        }
    }

    #[test]
    fn continuous_at_splice() {
        let model = NvAbsorptionModel::bundled().unwrap();
        let jump = model.splice_jump().unwrap();
        assert!(jump < 0.05, "splice jump {jump}");
        let below = model.sigma(670e-9).unwrap();
        let above = model.sigma(670.001e-9).unwrap();
        assert!((above / below - 1.0).abs() < 0.05);
    }

    #[test]
    fn fit_tracks_anchor_points() {
        let model = NvAbsorptionModel::bundled().unwrap();
        let anchors = bundled_spectrum("nv-absorption-anchors").unwrap();
        for (&w, &v) in anchors.wavelengths().iter().zip(anchors.values()) {
            let rel = (model.fitted(w) / v - 1.0).abs();
            assert!(rel < 0.02, "anchor {:.0} nm off by {rel}", w * 1e9);
        }
    }

    #[test]
    fn range_is_enforced_and_configurable() {
        let model = NvAbsorptionModel::bundled().unwrap();
        assert!(matches!(model.sigma(450e-9), Err(Error::OutOfRange { .. })));
        assert!(model.sigma(1001e-9).is_err());
        let narrow = model.clone().with_range(500e-9, 850e-9).unwrap();
        assert!(narrow.sigma(900e-9).is_err());
        assert!(model.sigma(900e-9).is_ok());
        assert!(model.clone().with_range(400e-9, 850e-9).is_err());
    }

    #[test]
    fn fit_needs_enough_anchors() {
        let table = bundled_spectrum("nv-absorption-table").unwrap();
        let few = Spectrum::new(vec![700e-9, 800e-9], vec![1e-23, 1e-25], SpectrumKind::CrossSection).unwrap();
        assert!(NvAbsorptionModel::fit(table, &few, NV_SPLICE_WAVELENGTH).is_err());
    }

    #[test]
    fn sampled_spectrum_matches_model() {
        let model = NvAbsorptionModel::bundled().unwrap();
        let s = model.to_spectrum(0.5e-9).unwrap();
        assert_eq!(s.range(), model.range());
        assert!((s.interpolate(532e-9).unwrap() / 0.95e-20 - 1.0).abs() < 1e-6);
    }
}
