//! Flat `section.key = value` scenario text.
//!
//! Every physical quantity carries its unit in the key name. Optional groups
//! (`species.levels.*`, `solvent.*`) are all-or-nothing.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::brownian::SolventModel;
use crate::cooling::{BeamParams, DefectSpecies, ParticleEnvironment, ThermalLoad};
use crate::error::{Error, Result};
use crate::spectra::DoubletStructure;

use super::{Axis, Grid, Scenario, SweepAxis};

/// Every recognised key, in serialization order.
pub const KEYS: &[&str] = &[
    "scenario.name",
    "species.name",
    "species.gamma_rad_per_s",
    "species.lambda_F_m",
    "species.number_density_per_m3",
    "species.quantum_efficiency",
    "species.levels.delta_E_lower_eV",
    "species.levels.delta_E_upper_eV",
    "species.levels.d_lower",
    "species.levels.d_upper",
    "species.levels.lambda_ZL_m",
    "env.diameter_m",
    "env.interaction_length_m",
    "env.emissivity",
    "env.ambient_T_K",
    "env.load",
    "env.h_conv_W_per_m2K",
    "solvent.name",
    "solvent.eta_infinity_Pa_s",
    "solvent.A_K",
    "solvent.T_VF_K",
    "beam.power_W",
    "beam.wavelength_m",
    "beam.spot_radius_m",
    "spectra.sigma_abs",
    "spectra.sigma_se",
    "spectra.refractive_index",
    "sweep.diameter_m",
    "sweep.power_W",
    "sweep.quantum_efficiency",
    "sweep.wavelength_m",
];

const LEVEL_KEYS: &[&str] = &[
    "species.levels.delta_E_lower_eV",
    "species.levels.delta_E_upper_eV",
    "species.levels.d_lower",
    "species.levels.d_upper",
    "species.levels.lambda_ZL_m",
];

const SOLVENT_KEYS: &[&str] = &[
    "solvent.name",
    "solvent.eta_infinity_Pa_s",
    "solvent.A_K",
    "solvent.T_VF_K",
];

pub(crate) type KeyValues = BTreeMap<String, String>;

/// Shortest text that parses back to exactly `x`.
pub(crate) fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-3..1e6).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub(crate) fn check_key(key: &str) -> Result<()> {
    if KEYS.contains(&key) {
        Ok(())
    } else {
        Err(Error::UnknownName {
            kind: "scenario key",
            name: key.to_string(),
            valid: KEYS.join(", "),
        })
    }
}

/// Reads `key = value` lines. `#` lines are comments, except `#@ ` lines, which
/// carry an embedded scenario (as written into output table headers); when any
/// `#@ ` line exists only those are read.
pub fn parse_key_values(text: &str, source_name: &str) -> Result<KeyValues> {
    let embedded = text.lines().any(|l| l.starts_with("#@ "));
    let mut map = KeyValues::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = if embedded {
            match raw.strip_prefix("#@ ") {
                Some(rest) => rest.trim(),
                None => continue,
            }
        } else {
            raw.trim()
        };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(source_name, idx + 1, "expected 'section.key = value'"))?;
        let (k, v) = (k.trim(), v.trim());
        check_key(k).map_err(|_| Error::parse(source_name, idx + 1, format!("unknown key '{k}'")))?;
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::parse(source_name, idx + 1, format!("duplicate key '{k}'")));
        }
    }
    Ok(map)
}

pub(crate) fn to_key_values(s: &Scenario) -> KeyValues {
    let mut m = KeyValues::new();
    let mut put = |k: &str, v: String| {
        m.insert(k.to_string(), v);
    };
    put("scenario.name", s.name.clone());
    put("species.name", s.species.name.clone());
    put("species.gamma_rad_per_s", fmt_num(s.species.gamma_rad));
    put("species.lambda_F_m", fmt_num(s.species.lambda_f));
    put("species.number_density_per_m3", fmt_num(s.species.number_density));
    put("species.quantum_efficiency", fmt_num(s.species.quantum_efficiency));
    if let Some(l) = &s.species.levels {
        put("species.levels.delta_E_lower_eV", fmt_num(l.delta_e_lower));
        put("species.levels.delta_E_upper_eV", fmt_num(l.delta_e_upper));
        put("species.levels.d_lower", l.d_lower.to_string());
        put("species.levels.d_upper", l.d_upper.to_string());
        put("species.levels.lambda_ZL_m", fmt_num(l.lambda_zl));
    }
    put("env.diameter_m", fmt_num(s.env.diameter));
    if let Some(len) = s.env.interaction_length {
        put("env.interaction_length_m", fmt_num(len));
    }
    put("env.emissivity", fmt_num(s.env.emissivity));
    put("env.ambient_T_K", fmt_num(s.env.ambient_t));
    match s.env.load {
        ThermalLoad::VacuumRadiative => put("env.load", "vacuum-radiative".into()),
        ThermalLoad::LiquidConvective { h_conv } => {
            put("env.load", "liquid-convective".into());
            put("env.h_conv_W_per_m2K", fmt_num(h_conv));
        }
    }
    if let Some(sol) = &s.env.solvent {
        put("solvent.name", sol.name.clone());
        put("solvent.eta_infinity_Pa_s", fmt_num(sol.eta_infinity));
        put("solvent.A_K", fmt_num(sol.a_vogel));
        put("solvent.T_VF_K", fmt_num(sol.t_vf));
    }
    put("beam.power_W", fmt_num(s.beam.power));
    put("beam.wavelength_m", fmt_num(s.beam.wavelength));
    put("beam.spot_radius_m", fmt_num(s.beam.spot_radius));
    put("spectra.sigma_abs", s.sigma_abs.to_string());
    put("spectra.sigma_se", s.sigma_se.to_string());
    put("spectra.refractive_index", fmt_num(s.refractive_index));
    for axis in &s.sweep {
        put(axis.axis.key(), axis.grid.to_string());
    }
    m
}

pub(crate) fn render(s: &Scenario) -> String {
    let m = to_key_values(s);
    let mut out = String::new();
    for key in KEYS {
        if let Some(v) = m.get(*key) {
            let _ = writeln!(out, "{key} = {v}");
        }
    }
    out
}

struct Reader<'a> {
    map: &'a KeyValues,
}

impl Reader<'_> {
    fn text(&self, key: &str) -> Result<&str> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::InvalidArgument(format!("scenario is missing '{key}'")))
    }

    fn num(&self, key: &str) -> Result<f64> {
        let raw = self.text(key)?;
        raw.parse::<f64>()
            .map_err(|_| Error::InvalidArgument(format!("'{key}': '{raw}' is not a number")))
    }

    fn count(&self, key: &str) -> Result<u32> {
        let raw = self.text(key)?;
        raw.parse::<u32>()
            .map_err(|_| Error::InvalidArgument(format!("'{key}': '{raw}' is not a non-negative integer")))
    }

    fn opt_num(&self, key: &str) -> Result<Option<f64>> {
        if self.map.contains_key(key) {
            self.num(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn group_present(&self, keys: &[&str]) -> Result<bool> {
        let present = keys.iter().filter(|k| self.map.contains_key(**k)).count();
        match present {
            0 => Ok(false),
            n if n == keys.len() => Ok(true),
            _ => {
                let missing: Vec<&str> = keys.iter().copied().filter(|k| !self.map.contains_key(*k)).collect();
                Err(Error::InvalidArgument(format!(
                    "incomplete key group; missing {}",
                    missing.join(", ")
                )))
            }
        }
    }
}

pub(crate) fn from_key_values(map: &KeyValues) -> Result<Scenario> {
    for key in map.keys() {
        check_key(key)?;
    }
    let r = Reader { map };

    let levels = if r.group_present(LEVEL_KEYS)? {
        Some(DoubletStructure::new(
            r.num("species.levels.delta_E_lower_eV")?,
            r.num("species.levels.delta_E_upper_eV")?,
            r.count("species.levels.d_lower")?,
            r.count("species.levels.d_upper")?,
            r.num("species.levels.lambda_ZL_m")?,
        )?)
    } else {
        None
    };
    let species = DefectSpecies {
        name: r.text("species.name")?.to_string(),
        gamma_rad: r.num("species.gamma_rad_per_s")?,
        lambda_f: r.num("species.lambda_F_m")?,
        number_density: r.num("species.number_density_per_m3")?,
        quantum_efficiency: r.num("species.quantum_efficiency")?,
        levels,
    };

    let load = match r.text("env.load")? {
        "vacuum-radiative" => {
            if map.contains_key("env.h_conv_W_per_m2K") {
                return Err(Error::InvalidArgument(
                    "'env.h_conv_W_per_m2K' only applies to env.load = liquid-convective".into(),
                ));
            }
            ThermalLoad::VacuumRadiative
        }
        "liquid-convective" => ThermalLoad::LiquidConvective {
            h_conv: r.num("env.h_conv_W_per_m2K")?,
        },
        other => {
            return Err(Error::UnknownName {
                kind: "env.load",
                name: other.to_string(),
                valid: "vacuum-radiative, liquid-convective".into(),
            })
        }
    };
    let solvent = if r.group_present(SOLVENT_KEYS)? {
        Some(SolventModel {
            name: r.text("solvent.name")?.to_string(),
            eta_infinity: r.num("solvent.eta_infinity_Pa_s")?,
            a_vogel: r.num("solvent.A_K")?,
            t_vf: r.num("solvent.T_VF_K")?,
        })
    } else {
        None
    };
    let env = ParticleEnvironment {
        diameter: r.num("env.diameter_m")?,
        interaction_length: r.opt_num("env.interaction_length_m")?,
        emissivity: r.num("env.emissivity")?,
        ambient_t: r.num("env.ambient_T_K")?,
        load,
        solvent,
    };
    let beam = BeamParams {
        power: r.num("beam.power_W")?,
        wavelength: r.num("beam.wavelength_m")?,
        spot_radius: r.num("beam.spot_radius_m")?,
    };

    let mut sweep = Vec::new();
    for axis in Axis::ALL {
        if let Some(raw) = map.get(axis.key()) {
            sweep.push(SweepAxis {
                axis,
                grid: raw.parse::<Grid>().map_err(|e| match e {
                    Error::InvalidArgument(m) => Error::InvalidArgument(format!("'{}': {m}", axis.key())),
                    other => other,
                })?,
            });
        }
    }

    let scenario = Scenario {
        name: r.text("scenario.name")?.to_string(),
        species,
        env,
        beam,
        sigma_abs: r.text("spectra.sigma_abs")?.parse()?,
        sigma_se: r.text("spectra.sigma_se")?.parse()?,
        refractive_index: r.num("spectra.refractive_index")?,
        sweep,
    };
    scenario.validate()?;
    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for x in [
            0.0,
            0.1,
            1e-4,
            2.65e24,
            295.0,
            721e-9,
            1.0 / 12e-9,
            1e-3,
            999999.5,
            -3.5,
        ] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_num(295.0), "295");
        assert_eq!(fmt_num(2.65e24), "2.65e24");
    }

    #[test]
    fn parse_reports_lines() {
        let err = parse_key_values("scenario.name = x\nbogus.key = 1\n", "f").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_key_values("scenario.name = x\nscenario.name = y\n", "f").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_key_values("no equals sign\n", "f").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn embedded_lines_take_precedence() {
        let text = "# header\n#@ scenario.name = a\nlambda_nm,x\n1,2\n";
        let m = parse_key_values(text, "t").unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m["scenario.name"], "a");
    }
}
