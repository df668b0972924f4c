//! Hot and cold Brownian motion of a trapped particle whose surface temperature
//! differs from the surrounding liquid.
//!
//! The particle sees an effective temperature `T_CBM = T_amb + 5ΔT/12` and an
//! effective viscosity `η_CBM`, obtained from a second-order expansion in
//! `ΔT / (T_amb − T_VF)` around the Vogel–Fulcher solvent viscosity `η₀ = η(T_amb)`.
//! The same expressions are used for both signs of ΔT.

use std::f64::consts::PI;
use std::path::Path;

use crate::constants::BOLTZMANN;
use crate::error::{Error, Result};

/// |ΔT / (T_amb − T_VF)| above which the quadratic truncation is flagged.
pub const EXPANSION_LIMIT: f64 = 0.3;

const BUILTIN_SOLVENTS: &str = include_str!("../data/solvents.csv");

/// Vogel–Fulcher solvent: η(T) = η_∞ exp[A / (T − T_VF)].
#[derive(Debug, Clone, PartialEq)]
pub struct SolventModel {
    pub name: String,
    /// Pa·s
    pub eta_infinity: f64,
    /// K
    pub a_vogel: f64,
    /// K
    pub t_vf: f64,
}

impl SolventModel {
    /// D₂O: η_∞ = 3.456×10⁻⁵ Pa·s, A = 478.7 K, T_VF = 160 K.
    pub fn heavy_water() -> Self {
        builtin_solvent("D2O").expect("D2O is bundled")
    }

    pub fn water() -> Self {
        builtin_solvent("H2O").expect("H2O is bundled")
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [
            ("eta_infinity", self.eta_infinity),
            ("A", self.a_vogel),
            ("T_VF", self.t_vf),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "solvent {} {what} must be positive, got {v:e}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// Parses `name, eta_infinity_Pa_s, A_K, T_VF_K` lines; `#` starts a comment line.
pub fn parse_solvents(text: &str, source_name: &str) -> Result<Vec<SolventModel>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                source_name,
                idx + 1,
                format!("expected 4 comma-separated fields, found {}", fields.len()),
            ));
        }
        let number = |i: usize, what: &str| -> Result<f64> {
            fields[i]
                .parse::<f64>()
                .map_err(|_| Error::parse(source_name, idx + 1, format!("bad {what} '{}'", fields[i])))
        };
        let solvent = SolventModel {
            name: fields[0].to_string(),
            eta_infinity: number(1, "eta_infinity")?,
            a_vogel: number(2, "A")?,
            t_vf: number(3, "T_VF")?,
        };
        solvent
            .validate()
            .map_err(|e| Error::parse(source_name, idx + 1, e.to_string()))?;
        out.push(solvent);
    }
    Ok(out)
}

pub fn read_solvents(path: impl AsRef<Path>) -> Result<Vec<SolventModel>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display(), e))?;
    parse_solvents(&text, &path.display().to_string())
}

pub fn builtin_solvents() -> Vec<SolventModel> {
    parse_solvents(BUILTIN_SOLVENTS, "bundled:solvents").expect("bundled solvent table parses")
}

/// Bundled solvent by (case-insensitive) name.
pub fn builtin_solvent(name: &str) -> Result<SolventModel> {
    let all = builtin_solvents();
    all.iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
        .cloned()
        .ok_or_else(|| Error::UnknownName {
            kind: "solvent",
            name: name.to_string(),
            valid: all.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(", "),
        })
}

/// η(T) = η_∞ exp[A / (T − T_VF)].
pub fn solvent_viscosity(t: f64, solvent: &SolventModel) -> Result<f64> {
    if !(t > solvent.t_vf) {
        return Err(Error::Domain(format!(
            "temperature {t} K is not above the Vogel-Fulcher temperature {} K of {}",
            solvent.t_vf, solvent.name
        )));
    }
    Ok(solvent.eta_infinity * (solvent.a_vogel / (t - solvent.t_vf)).exp())
}

/// T_CBM = T_amb + 5ΔT/12.
pub fn cbm_temperature(ambient_t: f64, delta_t: f64) -> Result<f64> {
    let t = ambient_t + 5.0 * delta_t / 12.0;
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "effective temperature {t} K is not positive (T_amb = {ambient_t} K, dT = {delta_t} K)"
        )));
    }
    Ok(t)
}

/// η₀ / η_CBM, quadratic in x = ΔT / (T_amb − T_VF) with ℓ = ln(η₀/η_∞):
/// 1 + (193/486) ℓ x − [(56/243) ℓ − (12563/118098) ℓ²] x².
pub fn viscosity_ratio(ambient_t: f64, delta_t: f64, solvent: &SolventModel) -> Result<f64> {
    let eta0 = solvent_viscosity(ambient_t, solvent)?;
    let ell = (eta0 / solvent.eta_infinity).ln();
    let x = delta_t / (ambient_t - solvent.t_vf);
    let linear = 193.0 / 486.0 * ell * x;
    let quadratic = (56.0 / 243.0 * ell - 12563.0 / 118098.0 * ell * ell) * x * x;
    let ratio = 1.0 + linear - quadratic;
    if !(ratio > 0.0) {
        return Err(Error::Domain(format!(
            "viscosity expansion gives eta0/eta_CBM = {ratio:.4} <= 0 at dT = {delta_t} K; \
             far outside its range of validity"
        )));
    }
    Ok(ratio)
}

/// η_CBM = η₀ / (η₀/η_CBM).
pub fn cbm_viscosity(ambient_t: f64, delta_t: f64, solvent: &SolventModel) -> Result<f64> {
    let eta0 = solvent_viscosity(ambient_t, solvent)?;
    if delta_t == 0.0 {
        return Ok(eta0);
    }
    Ok(eta0 / viscosity_ratio(ambient_t, delta_t, solvent)?)
}

/// χ = D_CBM / D_amb = (T_CBM / T_amb)(η₀ / η_CBM). The Stokes radius cancels.
pub fn diffusion_ratio(ambient_t: f64, delta_t: f64, solvent: &SolventModel) -> Result<f64> {
    if delta_t == 0.0 {
        solvent_viscosity(ambient_t, solvent)?;
        return Ok(1.0);
    }
    let t_cbm = cbm_temperature(ambient_t, delta_t)?;
    Ok(t_cbm / ambient_t * viscosity_ratio(ambient_t, delta_t, solvent)?)
}

/// True when ΔT is large enough that the quadratic viscosity expansion is suspect.
pub fn expansion_suspect(ambient_t: f64, delta_t: f64, solvent: &SolventModel) -> bool {
    (delta_t / (ambient_t - solvent.t_vf)).abs() > EXPANSION_LIMIT
}

/// A trapped particle of given radius, `delta_t` away from its solvent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrownianState {
    pub ambient_t: f64,
    pub delta_t: f64,
    pub particle_radius: f64,
}

impl BrownianState {
    pub fn validate(&self, solvent: &SolventModel) -> Result<()> {
        if !(self.particle_radius > 0.0) {
            return Err(Error::InvalidArgument("particle radius must be positive".into()));
        }
        if !(self.ambient_t > solvent.t_vf) {
            return Err(Error::Domain(format!(
                "ambient temperature {} K must exceed T_VF = {} K",
                self.ambient_t, solvent.t_vf
            )));
        }
        if !(self.ambient_t + self.delta_t > 0.0) {
            return Err(Error::Domain("particle temperature is not positive".into()));
        }
        Ok(())
    }

    /// D_CBM = k_B T_CBM / (6π R η_CBM), m²/s.
    pub fn cbm_diffusion_constant(&self, solvent: &SolventModel) -> Result<f64> {
        self.validate(solvent)?;
        let t = cbm_temperature(self.ambient_t, self.delta_t)?;
        let eta = cbm_viscosity(self.ambient_t, self.delta_t, solvent)?;
        Ok(BOLTZMANN * t / (6.0 * PI * self.particle_radius * eta))
    }

    /// Stokes–Einstein diffusion constant with no temperature difference, m²/s.
    pub fn ambient_diffusion_constant(&self, solvent: &SolventModel) -> Result<f64> {
        self.validate(solvent)?;
        let eta = solvent_viscosity(self.ambient_t, solvent)?;
        Ok(BOLTZMANN * self.ambient_t / (6.0 * PI * self.particle_radius * eta))
    }
}
