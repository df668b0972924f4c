//! Spectra shipped with the crate.
//!
//! The published NV and SiV spectra exist only as plots, so the bundled files are
//! parametric reconstructions (see [`reconstruct`]). Any of them can be replaced by
//! real data: a file `<name>.csv` found on the data search path takes precedence
//! over the embedded copy.

use crate::datapath;
use crate::error::{Error, Result};

use super::{
    absorption_from_emission, fl_emission_cross_section, parse_spectrum, DoubletStructure, NvAbsorptionModel, Spectrum,
};

const NV_EMISSION: &str = include_str!("../../data/nv-emission.csv");
const NV_ABSORPTION_TABLE: &str = include_str!("../../data/nv-absorption-table.csv");
const NV_ABSORPTION_ANCHORS: &str = include_str!("../../data/nv-absorption-anchors.csv");
const SIV_PL: &str = include_str!("../../data/siv-pl.csv");

/// Default SiV conversion parameters: τ_rad = 1.2 ns, n = 2.4, T = 295 K.
pub(crate) const SIV_TAU_RAD: f64 = 1.2e-9;
pub(crate) const DIAMOND_INDEX: f64 = 2.4;
pub(crate) const ROOM_TEMPERATURE: f64 = 295.0;

const FILE_BACKED: [(&str, &str); 4] = [
    ("nv-emission", NV_EMISSION),
    ("nv-absorption-table", NV_ABSORPTION_TABLE),
    ("nv-absorption-anchors", NV_ABSORPTION_ANCHORS),
    ("siv-pl", SIV_PL),
];

const DERIVED: [&str; 3] = ["nv-absorption", "siv-emission", "siv-absorption"];

/// Every name accepted by [`bundled_spectrum`].
pub fn bundled_names() -> Vec<&'static str> {
    FILE_BACKED
        .iter()
        .map(|(n, _)| *n)
        .chain(DERIVED.iter().copied())
        .collect()
}

/// Loads a bundled spectrum by name.
///
/// `nv-absorption` is the NV model sampled every 0.1 nm; `siv-emission` and
/// `siv-absorption` are derived from `siv-pl` with the room-temperature defaults.
pub fn bundled_spectrum(name: &str) -> Result<Spectrum> {
    if let Some((_, text)) = FILE_BACKED.iter().find(|(n, _)| *n == name) {
        if let Some(path) = datapath::find(&format!("{name}.csv")) {
            return super::read_spectrum(path);
        }
        return parse_spectrum(text, &format!("bundled:{name}"));
    }
    match name {
        "nv-absorption" => NvAbsorptionModel::bundled()?.to_spectrum(0.1e-9),
        "siv-emission" => fl_emission_cross_section(&bundled_spectrum("siv-pl")?, SIV_TAU_RAD, DIAMOND_INDEX),
        "siv-absorption" => absorption_from_emission(
            &bundled_spectrum("siv-emission")?,
            ROOM_TEMPERATURE,
            &DoubletStructure::siv(),
        ),
        _ => Err(Error::UnknownName {
            kind: "bundled spectrum",
            name: name.to_string(),
            valid: bundled_names().join(", "),
        }),
    }
}

/// Parametric models behind the bundled files, with their tuned parameters.
pub mod reconstruct {
    use std::fmt::Write as _;

    use crate::error::Result;
    use crate::spectra::{fl_emission_cross_section, Spectrum, SpectrumKind};

    fn gaussian(x: f64, center: f64, width: f64) -> f64 {
        (-0.5 * ((x - center) / width).powi(2)).exp()
    }

    fn grid_nm(start: f64, step: f64, count: usize) -> Vec<f64> {
        (0..count).map(|i| start + step * i as f64).collect()
    }

    /// NV⁻ photoluminescence shape: 637 nm zero-phonon line plus four Gaussian
    /// sideband components. The sideband offset (5.5 nm) is tuned so that the
    /// derived emission cross section has a mean wavelength of 721 nm.
    pub fn nv_pl_shape(lambda_nm: f64) -> f64 {
        const SHIFT: f64 = 5.5;
        0.08 * gaussian(lambda_nm, 637.0, 1.2)
            + 0.45 * gaussian(lambda_nm, 655.0 + SHIFT, 8.0)
            + 1.0 * gaussian(lambda_nm, 682.0 + SHIFT, 18.0)
            + 0.85 * gaussian(lambda_nm, 712.0 + SHIFT, 24.0)
            + 0.35 * gaussian(lambda_nm, 752.0 + SHIFT, 30.0)
    }

    /// NV⁻ emission cross section on 600–1000 nm (0.5 nm), via Füchtbauer–Ladenburg
    /// with τ_rad = 12 ns and n = 2.4.
    pub fn nv_emission() -> Result<Spectrum> {
        let grid = grid_nm(600.0, 0.5, 801);
        let pl = Spectrum::new(
            grid.iter().map(|w| w / 1e9).collect(),
            grid.iter().map(|&w| nv_pl_shape(w)).collect(),
            SpectrumKind::Intensity,
        )?;
        fl_emission_cross_section(&pl, 12e-9, 2.4)
    }

    /// SiV⁻ photoluminescence: Lorentzian zero-phonon line at 738 nm (2.6 nm HWHM)
    /// plus a weak sideband whose weight (0.0102) puts the mean at 741 nm.
    pub fn siv_pl_shape(lambda_nm: f64) -> f64 {
        let hwhm = 2.6;
        hwhm * hwhm / ((lambda_nm - 738.0).powi(2) + hwhm * hwhm) + 0.0102 * gaussian(lambda_nm, 765.0, 14.0)
    }

    /// NV⁻ absorption band below the splice: Gaussian in photon energy (2.175 eV
    /// center, 0.117 eV width), scaled to 0.95×10⁻²⁰ m² at 532 nm.
    pub fn nv_absorption_band(lambda_nm: f64) -> f64 {
        let energy = |w: f64| 1239.841984 / w;
        let shape = |w: f64| gaussian(energy(w), 2.175, 0.117);
        0.95e-20 * shape(lambda_nm) / shape(532.0)
    }

    /// Weak-absorption tail used to generate the anchor points above 670 nm.
    pub fn nv_absorption_tail(lambda_nm: f64) -> f64 {
        let d = lambda_nm - 670.0;
        nv_absorption_band(670.0) * (-0.09 * d + 6e-5 * d * d).exp()
    }

    fn render(header: &str, kind: SpectrumKind, rows: impl Iterator<Item = (f64, String)>) -> String {
        let mut out = format!("# kind={}\n", kind.tag());
        for line in header.lines() {
            let _ = writeln!(out, "# {line}");
        }
        for (w, v) in rows {
            let _ = writeln!(out, "{w},{v}");
        }
        out
    }

    /// Contents of every bundled data file, keyed by file name.
    pub fn render_all() -> Result<Vec<(&'static str, String)>> {
        let nv = nv_emission()?;
        let nv_grid = grid_nm(600.0, 0.5, 801);
        let nv_file = render(
            "NV- emission cross section (reconstruction).\nZPL 637 nm + Gaussian phonon sideband, Fuchtbauer-Ladenburg with tau_rad = 12 ns, n = 2.4.\nMean emission wavelength 721 nm.",
            SpectrumKind::CrossSection,
            nv_grid.iter().zip(nv.values()).map(|(&w, v)| (w, format!("{v:.6e}"))),
        );

        let siv_grid = grid_nm(710.0, 0.25, 1161);
        let siv_file = render(
            "SiV- room-temperature photoluminescence (reconstruction).\nLorentzian ZPL 738 nm (HWHM 2.6 nm) + weak sideband at 765 nm.\nMean emission wavelength 741 nm.",
            SpectrumKind::Intensity,
            siv_grid.iter().map(|&w| (w, format!("{:.6e}", siv_pl_shape(w)))),
        );

        let table_grid = grid_nm(500.0, 2.0, 86);
        let table_file = render(
            "NV- absorption cross section below 670 nm (reconstruction).\nGaussian band in energy, 0.95e-20 m^2 at 532 nm.",
            SpectrumKind::CrossSection,
            table_grid.iter().map(|&w| (w, format!("{:.4e}", nv_absorption_band(w)))),
        );

        let anchor_grid = grid_nm(670.0, 10.0, 34);
        let anchor_file = render(
            "NV- absorption anchor points above 670 nm (reconstruction, 3 significant digits).\nFitted with exp(quartic) by the absorption model.",
            SpectrumKind::CrossSection,
            anchor_grid.iter().map(|&w| (w, format!("{:.2e}", nv_absorption_tail(w)))),
        );

        Ok(vec![
            ("nv-emission.csv", nv_file),
            ("siv-pl.csv", siv_file),
            ("nv-absorption-table.csv", table_file),
            ("nv-absorption-anchors.csv", anchor_file),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{mean_fluorescence_wavelength, SpectrumKind};

    #[test]
    fn embedded_files_match_the_generator() {
        let embedded = [
            ("nv-emission.csv", NV_EMISSION),
            ("siv-pl.csv", SIV_PL),
            ("nv-absorption-table.csv", NV_ABSORPTION_TABLE),
            ("nv-absorption-anchors.csv", NV_ABSORPTION_ANCHORS),
        ];
        let generated = reconstruct::render_all().unwrap();
        for (name, text) in embedded {
            let (_, fresh) = generated.iter().find(|(n, _)| *n == name).unwrap();
            assert_eq!(
                fresh, text,
                "{name} is stale; run `cargo run --example regenerate_bundled`"
            );
        }
    }

    #[test]
    fn every_name_loads() {
        for name in bundled_names() {
            let s = bundled_spectrum(name).unwrap();
            assert!(s.len() > 10, "{name}");
        }
        assert!(matches!(bundled_spectrum("nope"), Err(Error::UnknownName { .. })));
    }

    #[test]
    fn mean_wavelengths_of_reconstructions() {
        let nv = mean_fluorescence_wavelength(&bundled_spectrum("nv-emission").unwrap()).unwrap();
        assert!((nv * 1e9 - 721.0).abs() < 1.0, "{}", nv * 1e9);
        let siv = mean_fluorescence_wavelength(&bundled_spectrum("siv-pl").unwrap()).unwrap();
        assert!((siv * 1e9 - 741.0).abs() < 1.0, "{}", siv * 1e9);
    }

    #[test]
    fn kinds() {
        assert_eq!(bundled_spectrum("siv-pl").unwrap().kind(), SpectrumKind::Intensity);
        assert_eq!(
            bundled_spectrum("siv-absorption").unwrap().kind(),
            SpectrumKind::CrossSection
        );
    }
}
