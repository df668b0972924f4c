//! Named parameter sets and the sweep driver that turns them into tables.
//!
//! A [`Scenario`] fixes the defect species, the particle environment, default
//! beam settings, where the two cross sections come from and which axes to
//! sweep. Scenarios serialize to flat `section.key = value` text (see [`KEYS`]),
//! and any key can be overridden before a run.

mod figures;
mod keys;
mod table;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::cooling::{evaluate, BeamParams, DefectSpecies, ParticleEnvironment};
use crate::datapath;
use crate::error::{Error, Result};
use crate::spectra::{
    absorption_from_emission, bundled_names, bundled_spectrum, fl_emission_cross_section, linspace, read_spectrum,
    DoubletStructure, Spectrum, SpectrumKind,
};

pub use figures::{figure, run_figure, Curve, Figure, FIGURES};
pub use keys::{parse_key_values, KEYS};
pub use table::{OutputTable, Summary, TableRow};

/// Names accepted by [`builtin_scenario`].
pub const BUILTIN_SCENARIOS: [&str; 3] = ["nv-vacuum", "nv-water", "siv-vacuum"];

/// Where a cross-section spectrum comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumRef {
    /// A bundled spectrum (`bundled:<name>`).
    Bundled(String),
    /// A spectrum file (`file:<path>`), looked up on the data path when relative.
    File(PathBuf),
}

impl fmt::Display for SpectrumRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumRef::Bundled(name) => write!(f, "bundled:{name}"),
            SpectrumRef::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl FromStr for SpectrumRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(name) = s.strip_prefix("bundled:") {
            if !bundled_names().contains(&name) {
                return Err(Error::UnknownName {
                    kind: "bundled spectrum",
                    name: name.to_string(),
                    valid: bundled_names().join(", "),
                });
            }
            Ok(SpectrumRef::Bundled(name.to_string()))
        } else if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(Error::InvalidArgument("empty spectrum file path".into()));
            }
            Ok(SpectrumRef::File(PathBuf::from(path)))
        } else {
            Err(Error::InvalidArgument(format!(
                "spectrum reference '{s}' must start with 'bundled:' or 'file:'"
            )))
        }
    }
}

/// A swept scenario parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Diameter,
    Power,
    QuantumEfficiency,
    Wavelength,
}

impl Axis {
    /// Nesting order of the cartesian product, outermost first.
    pub const ALL: [Axis; 4] = [Axis::Diameter, Axis::Power, Axis::QuantumEfficiency, Axis::Wavelength];

    pub fn key(self) -> &'static str {
        match self {
            Axis::Diameter => "sweep.diameter_m",
            Axis::Power => "sweep.power_W",
            Axis::QuantumEfficiency => "sweep.quantum_efficiency",
            Axis::Wavelength => "sweep.wavelength_m",
        }
    }
}

/// `count` evenly spaced values from `start` to `stop`, written `start:stop:count`.
/// A single value is written on its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn single(value: f64) -> Self {
        Grid {
            start: value,
            stop: value,
            count: 1,
        }
    }

    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        let g = Grid { start, stop, count };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::InvalidArgument("grid bounds must be finite".into()));
        }
        match self.count {
            0 => Err(Error::InvalidArgument("grid needs at least one point".into())),
            1 if self.start != self.stop => Err(Error::InvalidArgument("a one-point grid needs start == stop".into())),
            1 => Ok(()),
            _ if self.stop > self.start => Ok(()),
            _ => Err(Error::InvalidArgument(format!(
                "grid stop ({:e}) must exceed start ({:e})",
                self.stop, self.start
            ))),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            vec![self.start]
        } else {
            linspace(self.start, self.stop, self.count)
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.count == 1 {
            write!(f, "{}", keys::fmt_num(self.start))
        } else {
            write!(
                f,
                "{}:{}:{}",
                keys::fmt_num(self.start),
                keys::fmt_num(self.stop),
                self.count
            )
        }
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("'{}' is not a number", t.trim())))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Grid::new(num(v)?, num(v)?, 1),
            [a, b, n] => {
                let count = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("'{}' is not a point count", n.trim())))?;
                Grid::new(num(a)?, num(b)?, count)
            }
            _ => Err(Error::InvalidArgument(format!(
                "grid '{s}' must be 'value' or 'start:stop:count'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub axis: Axis,
    pub grid: Grid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub species: DefectSpecies,
    pub env: ParticleEnvironment,
    /// Values used for any axis that is not swept.
    pub beam: BeamParams,
    pub sigma_abs: SpectrumRef,
    pub sigma_se: SpectrumRef,
    /// Used when a cross section is derived from a photoluminescence spectrum.
    pub refractive_index: f64,
    pub sweep: Vec<SweepAxis>,
}

/// One of the built-in scenarios: `nv-vacuum`, `nv-water` or `siv-vacuum`.
///
/// All use a 20 µm particle, a 5 µm spot radius, unit quantum efficiency and
/// 295 K. The NV scenarios sweep 700–850 nm; `siv-vacuum` sweeps 720–820 nm at
/// 0.1 mW.
pub fn builtin_scenario(name: &str) -> Result<Scenario> {
    let wavelength_sweep = |start: f64, stop: f64, count| {
        vec![SweepAxis {
            axis: Axis::Wavelength,
            grid: Grid { start, stop, count },
        }]
    };
    let nv = |name: &str, env: ParticleEnvironment, power: f64| Scenario {
        name: name.to_string(),
        species: DefectSpecies::nv(),
        env,
        beam: BeamParams {
            power,
            wavelength: 760e-9,
            spot_radius: 5e-6,
        },
        sigma_abs: SpectrumRef::Bundled("nv-absorption".into()),
        sigma_se: SpectrumRef::Bundled("nv-emission".into()),
        refractive_index: 2.4,
        sweep: wavelength_sweep(700e-9, 850e-9, 301),
    };
    match name {
        "nv-vacuum" => Ok(nv(name, ParticleEnvironment::vacuum(20e-6), 0.1)),
        "nv-water" => Ok(nv(name, ParticleEnvironment::heavy_water(20e-6), 1.0)),
        "siv-vacuum" => Ok(Scenario {
            name: name.to_string(),
            species: DefectSpecies::siv(),
            env: ParticleEnvironment::vacuum(20e-6),
            beam: BeamParams {
                power: 1e-4,
                wavelength: 760e-9,
                spot_radius: 5e-6,
            },
            sigma_abs: SpectrumRef::Bundled("siv-absorption".into()),
            sigma_se: SpectrumRef::Bundled("siv-emission".into()),
            refractive_index: 2.4,
            sweep: wavelength_sweep(720e-9, 820e-9, 201),
        }),
        _ => Err(Error::UnknownName {
            kind: "scenario",
            name: name.to_string(),
            valid: BUILTIN_SCENARIOS.join(", "),
        }),
    }
}

/// A resolved cross section and a note on where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedSpectrum {
    pub spectrum: Spectrum,
    pub provenance: String,
}

impl Scenario {
    /// Parses scenario text. If the text contains `#@ ` lines (an output table
    /// header) only those are read.
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        keys::from_key_values(&parse_key_values(text, source_name)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display(), e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// `section.key = value` lines in canonical order.
    pub fn to_text(&self) -> String {
        keys::render(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() || self.name.contains('\n') {
            return Err(Error::InvalidArgument(
                "scenario name must be a non-empty single line".into(),
            ));
        }
        self.species.validate()?;
        self.env.validate()?;
        self.beam.validate()?;
        if !(self.refractive_index >= 1.0 && self.refractive_index.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "refractive index must be at least 1, got {}",
                self.refractive_index
            )));
        }
        for (i, a) in self.sweep.iter().enumerate() {
            a.grid.validate()?;
            if self.sweep[..i].iter().any(|b| b.axis == a.axis) {
                return Err(Error::InvalidArgument(format!("'{}' given twice", a.axis.key())));
            }
        }
        Ok(())
    }

    /// Copy with `key = value` pairs applied. Unknown keys are an error naming the key.
    pub fn with_overrides<K: AsRef<str>, V: AsRef<str>>(&self, overrides: &[(K, V)]) -> Result<Self> {
        if overrides.is_empty() {
            return Ok(self.clone());
        }
        let mut map = keys::to_key_values(self);
        for (k, v) in overrides {
            let (k, v) = (k.as_ref().trim(), v.as_ref().trim());
            keys::check_key(k)?;
            map.insert(k.to_string(), v.to_string());
        }
        keys::from_key_values(&map)
    }

    /// Grid of one axis: the swept grid if present, else the scenario default.
    pub fn axis_values(&self, axis: Axis) -> Vec<f64> {
        if let Some(a) = self.sweep.iter().find(|a| a.axis == axis) {
            return a.grid.values();
        }
        vec![match axis {
            Axis::Diameter => self.env.diameter,
            Axis::Power => self.beam.power,
            Axis::QuantumEfficiency => self.species.quantum_efficiency,
            Axis::Wavelength => self.beam.wavelength,
        }]
    }

    fn levels(&self) -> DoubletStructure {
        self.species.levels.unwrap_or_else(DoubletStructure::siv)
    }

    /// Loads one cross section. `siv-emission` and `siv-absorption` are derived
    /// from `siv-pl` with this scenario's τ_rad = 1/γ_rad, refractive index,
    /// ambient temperature and level structure.
    pub fn resolve(&self, source: &SpectrumRef) -> Result<ResolvedSpectrum> {
        let (spectrum, provenance) = match source {
            SpectrumRef::Bundled(name) => {
                let tau = 1.0 / self.species.gamma_rad;
                let n = self.refractive_index;
                let pl_origin = || match datapath::find("siv-pl.csv") {
                    Some(p) => p.display().to_string(),
                    None => "embedded".to_string(),
                };
                match name.as_str() {
                    "siv-emission" => (
                        fl_emission_cross_section(&bundled_spectrum("siv-pl")?, tau, n)?,
                        format!(
                            "siv-pl ({}) via Fuchtbauer-Ladenburg, tau_rad={tau:e} s, n={n}",
                            pl_origin()
                        ),
                    ),
                    "siv-absorption" => {
                        let se = fl_emission_cross_section(&bundled_spectrum("siv-pl")?, tau, n)?;
                        let levels = self.levels();
                        (
                            absorption_from_emission(&se, self.env.ambient_t, &levels)?,
                            format!(
                                "siv-pl ({}) via Fuchtbauer-Ladenburg and McCumber, tau_rad={tau:e} s, n={n}, T={} K, lambda_ZL={} nm",
                                pl_origin(),
                                self.env.ambient_t,
                                levels.lambda_zl * 1e9
                            ),
                        )
                    }
                    other => {
                        let origin = datapath::find(&format!("{other}.csv"))
                            .map(|p| p.display().to_string())
                            .unwrap_or_else(|| "embedded".to_string());
                        (bundled_spectrum(other)?, origin)
                    }
                }
            }
            SpectrumRef::File(path) => {
                let resolved = datapath::resolve(path);
                (read_spectrum(&resolved)?, resolved.display().to_string())
            }
        };
        if spectrum.kind() != SpectrumKind::CrossSection {
            return Err(Error::InvalidArgument(format!(
                "{source} is a relative intensity spectrum; a cross section (m^2) is required"
            )));
        }
        Ok(ResolvedSpectrum { spectrum, provenance })
    }
}

/// Runs `scenario` with `overrides` applied over the cartesian product of its
/// axes (diameter outermost, wavelength innermost).
///
/// Points are evaluated in parallel but rows always come back in grid order, so
/// the table is identical for any thread count. Points where the model has no
/// solution are kept as failed rows.
pub fn run_scenario<K: AsRef<str>, V: AsRef<str>>(scenario: &Scenario, overrides: &[(K, V)]) -> Result<OutputTable> {
    let s = scenario.with_overrides(overrides)?;
    let sa = s.resolve(&s.sigma_abs)?;
    let se = s.resolve(&s.sigma_se)?;

    let lambdas = s.axis_values(Axis::Wavelength);
    for (what, r) in [("sigma_abs", &sa), ("sigma_se", &se)] {
        let (lo, hi) = r.spectrum.range();
        if let Some(&w) = lambdas.iter().find(|&&w| !(w >= lo && w <= hi)) {
            return Err(Error::InvalidArgument(format!(
                "wavelength {:.3} nm lies outside the {what} spectrum ({:.3}-{:.3} nm)",
                w * 1e9,
                lo * 1e9,
                hi * 1e9
            )));
        }
    }

    let mut combos = Vec::new();
    for &d in &s.axis_values(Axis::Diameter) {
        for &p in &s.axis_values(Axis::Power) {
            for &q in &s.axis_values(Axis::QuantumEfficiency) {
                let env = ParticleEnvironment {
                    diameter: d,
                    ..s.env.clone()
                };
                let species = DefectSpecies {
                    quantum_efficiency: q,
                    ..s.species.clone()
                };
                env.validate()?;
                species.validate()?;
                BeamParams { power: p, ..s.beam }.validate()?;
                combos.push((env, species, p));
            }
        }
    }

    let sigma: Vec<(f64, f64)> = lambdas
        .iter()
        .map(|&w| Ok((sa.spectrum.interpolate(w)?, se.spectrum.interpolate(w)?)))
        .collect::<Result<_>>()?;

    let n = lambdas.len();
    let rows: Vec<TableRow> = (0..combos.len() * n)
        .into_par_iter()
        .map(|i| {
            let (env, species, power) = &combos[i / n];
            let (wavelength, (sigma_abs, sigma_se)) = (lambdas[i % n], sigma[i % n]);
            let beam = BeamParams {
                power: *power,
                wavelength,
                spot_radius: s.beam.spot_radius,
            };
            TableRow {
                wavelength,
                power: *power,
                diameter: env.diameter,
                quantum_efficiency: species.quantum_efficiency,
                sigma_abs,
                sigma_se,
                result: evaluate(species, &beam, env, sigma_abs, sigma_se),
            }
        })
        .collect();

    Ok(OutputTable::new(&s, &sa.provenance, &se.provenance, rows))
}
